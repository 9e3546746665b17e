"""Line-oriented structure documents.

Grammar::

    document := line*
    line     := comment | "field" SPEC | header | entry | "end"
    header   := KIND NAME (KEY "=" VALUE | FLAG)*        opens a block closed by "end"
              | KIND NAME "=" "fixture:" FIXTURE           one-line reference
    entry    := "(" INT ("," INT)* ")" "->" SCALAR
              | INT "->" SCALAR
              | ("unit" | "counit") INT "->" SCALAR
    SCALAR   := INT | INT "/" INT

Block kinds and their entries:

    algebra A dim=n [names=a,b,..]    (i,j,l) -> c   e_i e_j has e_l-coefficient c;  unit i -> c
    coalgebra C dim=n [names=..]      (i,j,l) -> c   Delta c_i has c_j (x) c_l-coefficient c;  counit i -> c
    hopf H algebra=A coalgebra=C
    morphism f source=B target=A      (j,i) -> c     f(b_j) has a_i-coefficient c
    entwining E algebra=A coalgebra=C (c,a,a',c') -> v   psi(c (x) a) has a' (x) c'-coefficient v
    factorization F algebra=A right=S (s,a,a',s') -> v   R(s (x) a) has a' (x) s'-coefficient v
    action M hopf=H algebra=A         (h,a,b) -> v   h.a_a has a_b-coefficient v
    coring D canonical=f | coring D entwining=E
    grouplike x of=D|E [default]      i -> c         coordinates in C (entwinings) or in D
    chi X of=F|M [counit]             i -> c         covector on S
    element q of=X                    i -> c         element of A # S
    module N algebra=A dim=n          (a,m,m') -> c  m_m . a_a has m_m'-coefficient c (right module)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactla import QQ, ContractViolation, Field, Matrix, fmt, zero_vec
from .structures import Algebra, AlgebraMorphism, Bialgebra, Bimodule, Coalgebra
from . import fixtures as fx

KINDS = ("algebra", "coalgebra", "hopf", "morphism", "entwining", "factorization", "action", "coring",
         "grouplike", "chi", "element", "module")
ARITY = {"algebra": 3, "coalgebra": 3, "morphism": 2, "entwining": 4, "factorization": 4, "action": 3,
         "grouplike": 1, "chi": 1, "element": 1, "module": 3}


class DocumentError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__("line %d, column %d: %s" % (line, col, msg) if line else msg)
        self.line, self.col = line, col


@dataclass
class Block:
    kind: str
    name: str
    keys: dict = dc_field(default_factory=dict)
    flags: list = dc_field(default_factory=list)
    entries: list = dc_field(default_factory=list)      # (tag, index tuple, Fraction); tag "", "unit", "counit"
    ref: str | None = None
    line: int = 0


@dataclass
class Document:
    field: str = "q"
    blocks: list = dc_field(default_factory=list)

    def block(self, name: str) -> Block | None:
        return next((b for b in self.blocks if b.name == name), None)


_ENTRY = re.compile(r"^(?:(unit|counit)\s+)?(\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)|\d+)\s*->\s*(\S+)$")
_SCALAR = re.compile(r"^-?\d+(?:/-?\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_'.-]*$")


def _scalar(tok: str, ln: int, col: int) -> Fraction:
    if not _SCALAR.match(tok):
        raise DocumentError("bad scalar %r" % tok, ln, col)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise DocumentError("zero denominator in %r" % tok, ln, col) from None


def parse(text: str) -> Document:
    doc = Document()
    cur: Block | None = None
    names = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        s = line.strip()
        if cur is not None:
            if s == "end":
                doc.blocks.append(cur)
                cur = None
                continue
            m = _ENTRY.match(s)
            if not m:
                raise DocumentError("expected an entry or 'end'", ln, col)
            tag, idx, val = m.group(1) or "", m.group(2), m.group(3)
            ints = tuple(int(t) for t in idx.strip("()").split(","))
            want = 1 if tag else ARITY.get(cur.kind)
            if want is None:
                raise DocumentError("%s blocks take no entries" % cur.kind, ln, col)
            if len(ints) != want:
                raise DocumentError("%s entry needs %d indices, got %d" % (cur.kind, want, len(ints)), ln, col)
            if any(i < 0 for i in ints):
                raise DocumentError("negative index", ln, col)
            cur.entries.append((tag, ints, _scalar(val, ln, col + s.index("->") + 3)))
            continue
        toks = s.split()
        if toks[0] == "field":
            if len(toks) != 2:
                raise DocumentError("usage: field q | field fp:<p>", ln, col)
            try:
                Field.from_spec(toks[1])
            except (ContractViolation, ValueError) as e:
                raise DocumentError(str(e), ln, col + 6) from None
            doc.field = toks[1].lower()
            continue
        if toks[0] == "end":
            raise DocumentError("'end' without an open block", ln, col)
        if toks[0] not in KINDS:
            raise DocumentError("unknown block kind %r" % toks[0], ln, col)
        if len(toks) < 2 or not _NAME.match(toks[1]):
            raise DocumentError("block needs a name", ln, col)
        kind, name = toks[0], toks[1]
        if name in names:
            raise DocumentError("duplicate name %r" % name, ln, col)
        names.add(name)
        if len(toks) == 4 and toks[2] == "=":
            if not toks[3].startswith("fixture:"):
                raise DocumentError("references must be of the form fixture:<NAME>", ln, col)
            doc.blocks.append(Block(kind, name, ref=toks[3][8:], line=ln))
            continue
        b = Block(kind, name, line=ln)
        for t in toks[2:]:
            if "=" in t:
                k, v = t.split("=", 1)
                b.keys[k] = v
            else:
                b.flags.append(t)
        cur = b
    if cur is not None:
        raise DocumentError("block %r is not closed with 'end'" % cur.name, cur.line, 1)
    return doc


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def emit(doc: Document) -> str:
    out = ["field %s" % doc.field]
    for b in doc.blocks:
        if b.ref is not None:
            out.append("%s %s = fixture:%s" % (b.kind, b.name, b.ref))
            continue
        head = [b.kind, b.name] + ["%s=%s" % (k, v) for k, v in b.keys.items()] + list(b.flags)
        out.append(" ".join(head))
        for tag, idx, val in b.entries:
            key = str(idx[0]) if len(idx) == 1 else "(%s)" % ",".join(map(str, idx))
            out.append("  %s%s -> %s" % (tag + " " if tag else "", key, _fmt_frac(val)))
        out.append("end")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- resolution

ALGEBRA_FIXTURES = {
    "k": fx.ground, "kC2": fx.group_algebra_c2, "H4": fx.sweedler_algebra, "Qi": fx.gaussian_rationals,
}
COALGEBRA_FIXTURES = {
    "k": lambda F: Coalgebra.ground(F), "kC2": fx.group_coalgebra_c2, "H4": fx.sweedler_coalgebra,
}
HOPF_FIXTURES = {"kC2": fx.kc2_hopf, "H4": fx.sweedler_hopf}


@dataclass
class Workspace:
    field: Field
    document: Document
    algebras: dict = dc_field(default_factory=dict)
    coalgebras: dict = dc_field(default_factory=dict)
    hopfs: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    entwinings: dict = dc_field(default_factory=dict)
    factorizations: dict = dc_field(default_factory=dict)
    actions: dict = dc_field(default_factory=dict)         # name -> (H, A, act)
    corings: dict = dc_field(default_factory=dict)         # name -> (kind, source name)
    grouplikes: dict = dc_field(default_factory=dict)      # name -> (of, vector, default flag)
    chis: dict = dc_field(default_factory=dict)            # name -> (of, covector)
    elements: dict = dc_field(default_factory=dict)        # name -> (of, vector)
    modules: dict = dc_field(default_factory=dict)         # name -> Bimodule


def _dim(b: Block) -> int:
    try:
        d = int(b.keys["dim"])
    except (KeyError, ValueError):
        raise DocumentError("%s %s needs dim=<n>" % (b.kind, b.name), b.line, 1) from None
    if d < 1:
        raise DocumentError("dimension must be positive", b.line, 1)
    return d


def _names(b: Block, d: int):
    if "names" not in b.keys:
        return None
    ns = b.keys["names"].split(",")
    if len(ns) != d:
        raise DocumentError("%d names for dimension %d" % (len(ns), d), b.line, 1)
    return ns


def _check_range(b: Block, bounds: tuple):
    for tag, idx, _ in b.entries:
        bb = (bounds[0],) if tag else bounds
        for i, n in zip(idx, bb):
            if i >= n:
                raise DocumentError("index %d out of range (dimension %d) in %s %s" % (i, n, b.kind, b.name),
                                    b.line, 1)


def _lookup(ws_map: dict, b: Block, key: str, what: str):
    name = b.keys.get(key)
    if name is None:
        raise DocumentError("%s %s needs %s=<name>" % (b.kind, b.name, key), b.line, 1)
    if name not in ws_map:
        raise DocumentError("unresolved reference %r (expected %s)" % (name, what), b.line, 1)
    return ws_map[name]


def resolve(doc: Document, field_override: str | None = None) -> Workspace:
    F = Field.from_spec(field_override or doc.field)
    ws = Workspace(F, doc)
    for b in doc.blocks:
        try:
            _resolve_block(ws, b)
        except ContractViolation as e:
            raise DocumentError("%s %s: %s" % (b.kind, b.name, e), b.line, 1) from None
    return ws


def _resolve_block(ws: Workspace, b: Block):
    F = ws.field
    if b.ref is not None:
        table = {"algebra": ALGEBRA_FIXTURES, "coalgebra": COALGEBRA_FIXTURES, "hopf": HOPF_FIXTURES}.get(b.kind)
        if table is None or b.ref not in table:
            raise DocumentError("unknown fixture %r for %s" % (b.ref, b.kind), b.line, 1)
        obj = table[b.ref](F)
        if b.kind == "algebra":
            ws.algebras[b.name] = obj
        elif b.kind == "coalgebra":
            ws.coalgebras[b.name] = obj
        else:
            ws.hopfs[b.name] = obj
            ws.algebras.setdefault(b.name, obj.algebra)
        return
    k = b.kind
    if k in ("algebra", "coalgebra"):
        d = _dim(b)
        _check_range(b, (d, d, d))
        table, unit = {}, zero_vec(F, d)
        for tag, idx, v in b.entries:
            if tag:
                if tag != ("unit" if k == "algebra" else "counit"):
                    raise DocumentError("%s entries do not take %r" % (k, tag), b.line, 1)
                unit[idx[0]] = F(v)
            else:
                table[idx] = F(v)
        if k == "algebra":
            ws.algebras[b.name] = Algebra.from_table(F, d, table, unit, _names(b, d))
        else:
            ws.coalgebras[b.name] = Coalgebra.from_table(F, d, table, unit, _names(b, d))
    elif k == "hopf":
        A = _lookup(ws.algebras, b, "algebra", "an algebra")
        C = _lookup(ws.coalgebras, b, "coalgebra", "a coalgebra")
        if A.dim != C.dim:
            raise DocumentError("algebra and coalgebra dimensions differ", b.line, 1)
        ws.hopfs[b.name] = Bialgebra(A, C)
    elif k == "morphism":
        S = _lookup(ws.algebras, b, "source", "an algebra")
        T = _lookup(ws.algebras, b, "target", "an algebra")
        _check_range(b, (S.dim, T.dim))
        M = Matrix(F, T.dim, S.dim)
        for _, (j, i), v in b.entries:
            M.data[i][j] = F(v)
        ws.morphisms[b.name] = AlgebraMorphism(S, T, M)
    elif k in ("entwining", "factorization"):
        A = _lookup(ws.algebras, b, "algebra", "an algebra")
        if k == "entwining":
            C = _lookup(ws.coalgebras, b, "coalgebra", "a coalgebra")
            nX = C.dim
        else:
            C = _lookup(ws.algebras, b, "right", "an algebra")
            nX = C.dim
        _check_range(b, (nX, A.dim, A.dim, nX))
        M = Matrix(F, A.dim * nX, nX * A.dim)
        for _, (c, a, a2, c2), v in b.entries:
            M.data[a2 * nX + c2][c * A.dim + a] = F(v)
        if k == "entwining":
            from .entwine import Entwining
            ws.entwinings[b.name] = Entwining(A, C, M, b.name)
        else:
            from .factor import Factorization
            ws.factorizations[b.name] = Factorization(A, C, M, b.name)
    elif k == "action":
        H = _lookup(ws.hopfs, b, "hopf", "a hopf block")
        A = _lookup(ws.algebras, b, "algebra", "an algebra")
        _check_range(b, (H.dim, A.dim, A.dim))
        act = [Matrix(F, A.dim, A.dim) for _ in range(H.dim)]
        for _, (h, a, c), v in b.entries:
            act[h].data[c][a] = F(v)
        ws.actions[b.name] = (H, A, act)
        from .factor import module_algebra_factorization
        ws.factorizations[b.name] = module_algebra_factorization(H, A, act)
    elif k == "coring":
        if "canonical" in b.keys:
            _lookup(ws.morphisms, b, "canonical", "a morphism")
            ws.corings[b.name] = ("canonical", b.keys["canonical"])
        elif "entwining" in b.keys:
            _lookup(ws.entwinings, b, "entwining", "an entwining")
            ws.corings[b.name] = ("entwining", b.keys["entwining"])
        else:
            raise DocumentError("coring needs canonical=<morphism> or entwining=<entwining>", b.line, 1)
    elif k == "grouplike":
        of = b.keys.get("of")
        if of in ws.entwinings:
            n = ws.entwinings[of].C.dim
        elif of in ws.corings:
            n = None
        else:
            raise DocumentError("unresolved reference %r (expected a coring or entwining)" % of, b.line, 1)
        if "default" in b.flags:
            ws.grouplikes[b.name] = (of, None, True)
            return
        if n is None and ws.corings[of][0] == "entwining":
            n = ws.entwinings[ws.corings[of][1]].C.dim
        if n is None:
            raise DocumentError("grouplikes of canonical corings use the 'default' flag (1 (x) 1)", b.line, 1)
        _check_range(b, (n,))
        v = zero_vec(F, n)
        for _, (i,), c in b.entries:
            v[i] = F(c)
        ws.grouplikes[b.name] = (of, v, False)
    elif k == "chi":
        of = b.keys.get("of")
        if of not in ws.factorizations:
            raise DocumentError("unresolved reference %r (expected a factorization or action)" % of, b.line, 1)
        S = ws.factorizations[of].S
        if "counit" in b.flags:
            if of not in ws.actions:
                raise DocumentError("'counit' needs an action block", b.line, 1)
            v = list(ws.actions[of][0].coalgebra.counit)
        else:
            _check_range(b, (S.dim,))
            v = zero_vec(F, S.dim)
            for _, (i,), c in b.entries:
                v[i] = F(c)
        ws.chis[b.name] = (of, v)
    elif k == "element":
        of = b.keys.get("of")
        if of not in ws.chis:
            raise DocumentError("unresolved reference %r (expected a chi block)" % of, b.line, 1)
        f = ws.factorizations[ws.chis[of][0]]
        n = f.A.dim * f.S.dim
        _check_range(b, (n,))
        v = zero_vec(F, n)
        for _, (i,), c in b.entries:
            v[i] = F(c)
        ws.elements[b.name] = (of, v)
    elif k == "module":
        A = _lookup(ws.algebras, b, "algebra", "an algebra")
        d = _dim(b)
        _check_range(b, (A.dim, d, d))
        ract = [Matrix(F, d, d) for _ in range(A.dim)]
        for _, (a, m, m2), v in b.entries:
            ract[a].data[m2][m] = F(v)
        ws.modules[b.name] = Bimodule(Algebra.ground(F), A, d, None, ract, b.name)


# ---------------------------------------------------------------- emission from objects

def _frac(x) -> Fraction:
    return Fraction(fmt(x))


def algebra_block(name: str, A: Algebra) -> Block:
    b = Block("algebra", name, {"dim": str(A.dim), "names": ",".join(A.names)})
    b.entries = [("unit", (i,), _frac(c)) for i, c in enumerate(A.unit) if c != 0]
    for i in range(A.dim):
        for j in range(A.dim):
            for l, c in enumerate(A.mult[i][j]):
                if c != 0:
                    b.entries.append(("", (i, j, l), _frac(c)))
    return b


def coalgebra_block(name: str, C: Coalgebra) -> Block:
    b = Block("coalgebra", name, {"dim": str(C.dim), "names": ",".join(C.names)})
    b.entries = [("counit", (i,), _frac(c)) for i, c in enumerate(C.counit) if c != 0]
    for i in range(C.dim):
        for j in range(C.dim):
            for l in range(C.dim):
                c = C.comult[i][j][l]
                if c != 0:
                    b.entries.append(("", (i, j, l), _frac(c)))
    return b


def _psi_entries(M: Matrix, nX: int, nA: int) -> list:
    out = []
    for c in range(nX):
        for a in range(nA):
            col = c * nA + a
            for r in range(nA * nX):
                v = M.data[r][col]
                if v != 0:
                    out.append(("", (c, a, r // nX, r % nX), _frac(v)))
    return out


def _vec_block(kind: str, name: str, of: str, v, flags=()) -> Block:
    return Block(kind, name, {"of": of}, list(flags), [("", (i,), _frac(c)) for i, c in enumerate(v) if c != 0])


def _entwining_doc(A, C, psi, x, label) -> Document:
    doc = Document("q")
    doc.blocks = [algebra_block("A", A), coalgebra_block("C", C)]
    e = Block("entwining", "E", {"algebra": "A", "coalgebra": "C"})
    e.entries = _psi_entries(psi, C.dim, A.dim)
    doc.blocks += [e, _vec_block("grouplike", "x", "E", [1 if i == x else 0 for i in range(C.dim)])]
    return doc


def _action_doc(H: Bialgebra, A: Algebra, act, q=None) -> Document:
    doc = Document("q")
    doc.blocks = [algebra_block("H", H.algebra), coalgebra_block("Hc", H.coalgebra),
                  Block("hopf", "Hopf", {"algebra": "H", "coalgebra": "Hc"}), algebra_block("A", A)]
    b = Block("action", "M", {"hopf": "Hopf", "algebra": "A"})
    for h in range(H.dim):
        for a in range(A.dim):
            for c in range(A.dim):
                v = act[h].data[c][a]
                if v != 0:
                    b.entries.append(("", (h, a, c), _frac(v)))
    doc.blocks += [b, Block("chi", "X", {"of": "M"}, ["counit"])]
    if q is not None:
        doc.blocks.append(_vec_block("element", "q", "X", q))
    return doc


def _e4_doc() -> Document:
    doc = Document("q")
    A = fx.gaussian_rationals(QQ)
    f = Block("morphism", "f", {"source": "B", "target": "A"}, entries=[("", (0, 0), Fraction(1))])
    doc.blocks = [algebra_block("B", fx.ground(QQ)), algebra_block("A", A), f,
                  Block("coring", "D", {"canonical": "f"}), Block("grouplike", "x", {"of": "D"}, ["default"])]
    return doc


def _hopf_doc(H: Bialgebra) -> Document:
    doc = Document("q")
    doc.blocks = [algebra_block("H", H.algebra), coalgebra_block("Hc", H.coalgebra),
                  Block("hopf", "Hopf", {"algebra": "H", "coalgebra": "Hc"})]
    return doc


SIGN_CLEFT_Q = [1, 1, 1, -1]      # (1+u) # 1 + (1-u) # g


def fixture_document(name: str) -> Document:
    key = name.upper()
    if key == "E1":
        return _entwining_doc(*fx.e1_data(), "E1")
    if key == "E2":
        return _hopf_doc(fx.kc2_hopf(QQ))
    if key == "E3":
        return _hopf_doc(fx.sweedler_hopf(QQ))
    if key == "E4":
        return _e4_doc()
    if key == "E5":
        return _entwining_doc(*fx.e5_data(), "E5")
    if key == "E6":
        return _entwining_doc(*fx.e6_data(), "E6")
    if key == "SIGN":
        H, A, act = fx.sign_action(QQ)
        return _action_doc(H, A, act, SIGN_CLEFT_Q)
    if key == "TRIVIAL":
        H, A, act = fx.trivial_action(fx.kc2_hopf(QQ), fx.group_algebra_c2(QQ, ("1", "u")))
        return _action_doc(H, A, act)
    if key == "H4-ON-K":
        H = fx.sweedler_hopf(QQ)
        _, A, act = fx.trivial_action(H, fx.ground(QQ))
        return _action_doc(H, A, act)
    raise DocumentError("unknown fixture %r" % name)


FIXTURE_NAMES = ("E1", "E2", "E3", "E4", "E5", "E6", "SIGN", "TRIVIAL", "H4-ON-K")


def load(arg: str) -> Document:
    """A path, '-' for stdin, or fixture:<NAME>."""
    if arg.startswith("fixture:"):
        return fixture_document(arg[8:])
    if arg == "-":
        import sys
        return parse(sys.stdin.read())
    with open(arg, encoding="utf-8") as fh:
        return parse(fh.read())
