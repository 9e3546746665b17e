"""Command-line front end: ``corings <command> <input> [options]``.

Exit codes: 0 all checks pass or certificates found, 1 definitive negative,
2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .coring import (Coring, can_map, canonical_coring, check_coring, comodule_to_module, default_witness_comodules,
                     is_grouplike, reflexivity_check, star_can, structure_theorems, tensor_comodule)
from .docformat import FIXTURE_NAMES, DocumentError, Workspace, emit, fixture_document, load, resolve
from .entwine import ConsistencyError, check_entwining, entwined_coring, thm33_report
from .exactla import ContractViolation, Matrix, fmt, unit_vec
from .factor import (CFMReport, DegeneratePairing, IntegralSpaceDimension, NotHopf, can_report,
                     check_factorization, check_hopf_casimir, check_module_algebra, chi_from_algebra_map,
                     cfm_context, cleft_factorization_check, find_cleft_q, hopf_frobenius, hopf_layer,
                     hopf_smash, left_context, cleft_equivalence_check)
from .morita import (a_projective_over_r, algebra_module, coring_context, counit_bijective,
                     mu_certificate, omega_bijective, prime_tau_certificate, tau_certificate, thm25_report)
from .structures import (check_algebra, check_bialgebra, check_bimodule, check_coalgebra, check_morphism,
                         is_algebra_map_to_ground)

PASS, FAIL, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)) and not hasattr(x, "numerator"):
        return x
    if isinstance(x, Matrix):
        return [[fmt(v) for v in row] for row in x.data]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return fmt(x)


def _violations(rep, limit: int = 5) -> list:
    return [v.to_dict() for v in rep.violations[:limit]]


class Report:
    def __init__(self, command: str, source: str, ws: Workspace | None, seed: int, attempts: int):
        self.command = command
        self.source = source
        self.seed = seed
        self.attempts = attempts
        self.instance = {}
        if ws is not None:
            self.instance = {"field": ws.field.spec,
                             "blocks": ["%s %s" % (b.kind, b.name) for b in ws.document.blocks]}
        self.checks: list[dict] = []
        self.witness_modules: list[str] = []
        self.code = PASS

    def add(self, name: str, verdict: str, code: int = PASS, **data):
        self.checks.append({"name": name, "verdict": verdict, "data": jsonable(data)})
        self.code = max(self.code, code)

    def to_dict(self) -> dict:
        return {"command": self.command, "source": self.source, "instance": self.instance, "checks": self.checks,
                "witness_modules": sorted(set(self.witness_modules)), "seed": self.seed,
                "attempts": self.attempts, "exit_code": self.code}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self, elapsed: float) -> str:
        lines = ["%s %s" % (self.command, self.source)]
        for c in self.checks:
            lines.append("  [%s] %s" % (c["verdict"], c["name"]))
            for k in sorted(c["data"]):
                v = c["data"][k]
                if v in (None, [], {}):
                    continue
                lines.append("      %s: %s" % (k, json.dumps(v, sort_keys=True)))
        if self.witness_modules:
            lines.append("  witness modules: %s" % ", ".join(sorted(set(self.witness_modules))))
        lines.append("  seed=%d attempts=%d exit=%d time=%.2fs" % (self.seed, self.attempts, self.code, elapsed))
        return "\n".join(lines) + "\n"


def _yes(b) -> str:
    return "pass" if b else "fail"


# ---------------------------------------------------------------- coring access

class Corings:
    """Lazily built corings and grouplikes of a workspace."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self._cache = {}

    def coring(self, name: str) -> Coring:
        if name not in self._cache:
            ws = self.ws
            if name in ws.entwinings:
                self._cache[name] = entwined_coring(ws.entwinings[name])
            else:
                kind, src = ws.corings[name]
                if kind == "canonical":
                    self._cache[name] = canonical_coring(ws.morphisms[src])
                else:
                    self._cache[name] = entwined_coring(ws.entwinings[src])
        return self._cache[name][0]

    def grouplike(self, gname: str):
        """(coring, x in coring coordinates, entwining or None, x in coalgebra coordinates or None)."""
        ws = self.ws
        of, v, default = ws.grouplikes[gname]
        cor = self.coring(of)
        extra = self._cache[of][1]
        ent = ws.entwinings.get(of) or (ws.entwinings.get(ws.corings[of][1]) if of in ws.corings and
                                        ws.corings[of][0] == "entwining" else None)
        if default:
            if ent is not None:
                v = unit_vec(ws.field, ent.C.dim, 0)
            else:
                return cor, list(extra), None, None
        if ent is not None:
            return cor, extra @ v, ent, v
        return cor, v, None, None

    def user_comodules(self, cor: Coring) -> list:
        return [tensor_comodule(cor, M, "%s(x)C" % M.label) for M in self.ws.modules.values()
                if M.right == cor.base]


def _grouplike_ok(rep: Report, gname: str, cor: Coring, x) -> bool:
    if not is_grouplike(cor, x):
        rep.add("grouplike %s" % gname, "fail", FAIL, reason="not a grouplike element")
        return False
    return True


# ---------------------------------------------------------------- commands

def cmd_check(ws: Workspace, rep: Report, args) -> None:
    cs = Corings(ws)
    for b in ws.document.blocks:
        k, n = b.kind, b.name
        try:
            if k == "algebra":
                r = check_algebra(ws.algebras[n])
            elif k == "coalgebra":
                r = check_coalgebra(ws.coalgebras[n])
            elif k == "hopf":
                r = check_bialgebra(ws.hopfs[n])
            elif k == "morphism":
                r = check_morphism(ws.morphisms[n])
            elif k == "entwining":
                r = check_entwining(ws.entwinings[n])
                if r.ok:
                    r.extend(check_coring(cs.coring(n)), "coring.")
            elif k == "factorization":
                r = check_factorization(ws.factorizations[n])
            elif k == "action":
                H, A, act = ws.actions[n]
                r = check_module_algebra(H, A, act)
                r.extend(check_factorization(ws.factorizations[n]), "factorization.")
            elif k == "coring":
                r = check_coring(cs.coring(n))
            elif k == "grouplike":
                cor, x, _, _ = cs.grouplike(n)
                ok = is_grouplike(cor, x)
                rep.add("grouplike %s" % n, _yes(ok), PASS if ok else FAIL)
                continue
            elif k == "chi":
                of, v = ws.chis[n]
                ok = is_algebra_map_to_ground(ws.factorizations[of].S, v)
                rep.add("chi %s algebra map" % n, _yes(ok), PASS if ok else FAIL)
                continue
            elif k == "element":
                rep.add("element %s" % n, "pass")
                continue
            elif k == "module":
                r = check_bimodule(ws.modules[n])
            else:
                continue
        except ContractViolation as e:
            rep.add("%s %s" % (k, n), "fail", FAIL, error=str(e))
            continue
        rep.add("%s %s" % (k, n), _yes(r.ok), PASS if r.ok else FAIL, violations=_violations(r))


def cmd_galois(ws: Workspace, rep: Report, args) -> None:
    cs = Corings(ws)
    if not ws.grouplikes:
        raise InputError("no grouplike block: galois needs a coring with a grouplike")
    for gname in ws.grouplikes:
        cor, x, _, _ = cs.grouplike(gname)
        if not _grouplike_ok(rep, gname, cor, x):
            continue
        g = can_map(cor, x)
        sc = star_can(cor, x, g)
        refl = reflexivity_check(cor)
        rep.add("can bijective (%s)" % gname, _yes(g.bijective), PASS if g.bijective else FAIL,
                dim_D=g.dims[0], dim_coring=g.dims[1], dim_B=g.B.dim, morphism=_violations(g.morphism_report))
        rep.add("*can bijective (%s)" % gname, _yes(sc.bijective), PASS if sc.bijective else FAIL)
        rep.add("reflexive (%s)" % gname, _yes(refl.reflexive))
        if g.bijective != sc.bijective:
            raise ConsistencyError("can and *can disagree on a reflexive coring")


def _coring_morita(cs: Corings, rep: Report, gname: str) -> None:
    cor, x, _, _ = cs.grouplike(gname)
    if not _grouplike_ok(rep, gname, cor, x):
        return
    cx = coring_context(cor, x)
    gen = cx.general
    tag = " (%s)" % gname
    rep.add("contexts built" + tag, "pass", dim_B=gen.B.dim, dim_R=gen.chi.R.dim, dim_Q=gen.Q_space.dim,
            dim_B_prime=cx.B_prime.dim, dim_Q_prime=cx.Q_prime_space.dim)
    rep.add("inclusion morphism of contexts" + tag, _yes(cx.morphism.ok and cx.inclusions and cx.identity_check),
            PASS if cx.morphism.ok and cx.inclusions and cx.identity_check else FAIL,
            violations=_violations(cx.morphism))
    tc = tau_certificate(gen)
    strict_tau = tc.Lambda is not None
    rep.add("tau surjective <=> Lambda with chi(Lambda) = 1" + tag, _yes(tc.consistent), PASS if tc.consistent else FAIL,
            tau_surjective=tc.tau_surjective, Lambda=tc.Lambda, idempotent=tc.idempotent, corner=tc.corner,
            trace_identity_on_B=tc.trace_identity_on_B)
    comods = default_witness_comodules(cor, x, cx.B_prime, cx.B_prime_incl) + cs.user_comodules(cor)
    rep.witness_modules.extend(M.label for M in comods)
    mods = [algebra_module(gen.chi)] + [comodule_to_module(M, cx.dual) for M in comods]
    proj = a_projective_over_r(gen)
    omega = all(omega_bijective(gen, M) for M in mods)
    Lp = prime_tau_certificate(cx)
    t24 = cx.tau_prime_surjective == (Lp is not None) and (Lp is None or omega)
    rep.add("tau' surjective <=> Lambda(x) = 1 <=> omega bijective" + tag, _yes(t24), PASS if t24 else FAIL,
            tau_prime_surjective=cx.tau_prime_surjective, Lambda_prime=Lp, omega_on_witnesses=omega,
            A_projective_over_R=proj)
    if Lp is not None:
        t25 = thm25_report(cx, Lp, comods)
        rep.add("consequences of tau' surjective" + tag, _yes(t25.ok), PASS if t25.ok else FAIL, items=t25.items)
    mc = mu_certificate(gen)
    g = can_map(cor, x)
    st = structure_theorems(cor, x, comods)
    counit = all(counit_bijective(gen, M) for M in mods) if mc.generators is not None else None
    t26 = mc.consistent and mc.mu_surjective == g.bijective == st.weak_holds
    if mc.generators is not None:
        t26 = t26 and all((mc.pi, mc.pi_prime, mc.kappa, mc.kappa_prime, counit))
    rep.add("mu surjective <=> Galois <=> weak structure theorem" + tag, _yes(t26), PASS if t26 else FAIL,
            mu_surjective=mc.mu_surjective, generators=mc.generators, pi=mc.pi, pi_prime=mc.pi_prime,
            kappa=mc.kappa, kappa_prime=mc.kappa_prime, counit_on_witnesses=counit, galois=g.bijective,
            weak_structure_theorem=st.weak_holds, dim_D=g.dims[0], dim_coring=g.dims[1])
    strict = strict_tau and mc.generators is not None
    rep.add("strict" + tag, "yes" if strict else "no", PASS if strict else FAIL)


def _factor_morita(ws: Workspace, rep: Report, cname: str) -> None:
    of, chi = ws.chis[cname]
    f = ws.factorizations[of]
    fc = chi_from_algebra_map(f, chi)
    lc = left_context(fc)
    tag = " (%s)" % cname
    rep.add("left context built" + tag, _yes(lc.formulas_agree), PASS if lc.formulas_agree else FAIL,
            dim_B=lc.context.B.dim, dim_R=lc.context.R.dim, dim_Q=lc.Q_space.dim,
            context=_violations(lc.context.check()))
    tc = tau_certificate(lc.op)
    mc = mu_certificate(lc.op)
    rep.add("tau surjective <=> Lambda with X(Lambda) = 1" + tag, _yes(tc.consistent), PASS if tc.consistent else FAIL,
            tau_surjective=tc.tau_surjective, Lambda=tc.Lambda, idempotent=tc.idempotent,
            trace_identity_on_B=tc.trace_identity_on_B)
    rep.add("mu surjective certificate" + tag, _yes(mc.consistent), PASS if mc.consistent else FAIL,
            mu_surjective=mc.mu_surjective, generators=mc.generators, pi=mc.pi, pi_prime=mc.pi_prime,
            kappa=mc.kappa, kappa_prime=mc.kappa_prime)
    strict = tc.Lambda is not None and mc.generators is not None
    rep.add("strict" + tag, "yes" if strict else "no", PASS if strict else FAIL)


def cmd_morita(ws: Workspace, rep: Report, args) -> None:
    if not ws.grouplikes and not ws.chis:
        raise InputError("morita needs a grouplike or a chi block")
    cs = Corings(ws)
    for gname in ws.grouplikes:
        _coring_morita(cs, rep, gname)
    for cname in ws.chis:
        _factor_morita(ws, rep, cname)


def _entwining_cleft(cs: Corings, rep: Report, gname: str, args) -> None:
    cor, x, ent, xc = cs.grouplike(gname)
    if ent is None:
        raise InputError("cleftness is defined here for entwinings and factorizations, not bare corings")
    if not _grouplike_ok(rep, gname, cor, x):
        return
    r = thm33_report(ent, xc, args.attempts, args.seed)
    short = "(%s)" % ",".join({True: "T", False: "F", None: "?"}[c] for c in r.conditions)
    code = {"cleft": PASS, "not cleft": FAIL}.get(r.verdict, INCONCLUSIVE)
    data = {"conditions": short, "cleft_search": r.cleft.status, "certificate": r.cleft.certificate,
            "attempts_used": r.cleft.attempts_used, "normal_basis": r.normal_basis, "galois": r.galois,
            "star_can": r.star_can, "strong_structure_theorem": r.strong, "details": r.details}
    if r.cleft.data is not None:
        data["lambda"] = r.cleft.data.lam
        data["lambda_inverse"] = r.cleft.data.lam_inv
    rep.witness_modules.extend(r.witnesses)
    rep.add("cleft: cleft, normal basis + strong, normal basis + Galois, normal basis + *can (%s)" % gname,
            "%s %s" % (r.verdict, short), code, **data)


def _factor_cleft(ws: Workspace, rep: Report, cname: str, args) -> None:
    of, chi = ws.chis[cname]
    f = ws.factorizations[of]
    fc = chi_from_algebra_map(f, chi)
    cands = [(n, v) for n, (o, v) in ws.elements.items() if o == cname]
    tag = " (%s)" % cname
    for n, q in cands:
        data, chk = cleft_factorization_check(f, chi, q, fc)
        if chk.q_bar is None:
            rep.add("q %s invertible in A^op (x) S" % n, "fail", FAIL)
            continue
        cond = "(%s)" % ",".join("T" if c else "F" for c in chk.conditions)
        rep.add("q %s: q in Q, left identity, right identity" % n, "%s %s" % ("cleft" if data else "not cleft", cond),
                PASS if data else FAIL, q=q, q_bar=chk.q_bar)
        if data is not None:
            p = cleft_equivalence_check(data)
            rep.add("can: A (x)_B A -> Hom(S, A) and counit maps (%s)" % n, _yes(p.ok), PASS if p.ok else FAIL,
                    dims=p.dims, rank=p.can_rank, witnesses=p.witnesses)
            rep.witness_modules.extend(p.witnesses)
        else:
            c = can_report(f, chi)
            rep.add("can rank (%s)" % n, "bijective" if c.can_bijective else "rank deficit", PASS,
                    dims=c.dims, rank=c.can_rank)
    if cands:
        return
    data, used = find_cleft_q(f, chi, args.attempts, args.seed)
    if data is not None:
        p = cleft_equivalence_check(data)
        rep.add("cleft search" + tag, "cleft", PASS if p.ok else FAIL, q=data.q, q_bar=data.q_bar,
                attempts_used=used, dims=p.dims, rank=p.can_rank, witnesses=p.witnesses)
        rep.witness_modules.extend(p.witnesses)
        return
    c = can_report(f, chi)
    if not c.can_bijective:
        rep.add("cleft search" + tag, "not cleft", FAIL, reason="can has a rank deficit", dims=c.dims, rank=c.can_rank)
    else:
        rep.add("cleft search" + tag, "inconclusive", INCONCLUSIVE, attempts_used=used, dims=c.dims, rank=c.can_rank)


def cmd_cleft(ws: Workspace, rep: Report, args) -> None:
    if not ws.grouplikes and not ws.chis:
        raise InputError("cleft needs an entwining with a grouplike or a factorization with a chi block")
    cs = Corings(ws)
    for gname in ws.grouplikes:
        _entwining_cleft(cs, rep, gname, args)
    for cname in ws.chis:
        _factor_cleft(ws, rep, cname, args)


def cmd_hopf(ws: Workspace, rep: Report, args) -> None:
    if not ws.hopfs:
        raise InputError("hopf needs a hopf block")
    layers = {}
    for n, H in ws.hopfs.items():
        try:
            hd = hopf_layer(H)
        except (NotHopf, IntegralSpaceDimension, DegeneratePairing, ContractViolation) as e:
            rep.add("Hopf layer %s" % n, "fail", FAIL, error="%s: %s" % (type(e).__name__, e))
            continue
        layers[n] = hd
        cas = check_hopf_casimir(hd)
        rep.add("Hopf layer %s" % n, _yes(cas.ok), PASS if cas.ok else FAIL, t=hd.t, distinguished=hd.distinguished,
                phi=hd.phi, antipode=hd.antipode, antipode_inverse=hd.antipode_inverse,
                integral_dim=hd.integral_dim, violations=_violations(cas))
    for n, (H, A, act) in ws.actions.items():
        hname = next((k for k, v in ws.hopfs.items() if v is H), None)
        if hname not in layers:
            continue
        hd = layers[hname]
        try:
            hs = hopf_smash(H, A, act)
        except ContractViolation as e:
            rep.add("module algebra %s" % n, "fail", FAIL, error=str(e))
            continue
        hopf_frobenius(hs, hd)
        rep.add("Frobenius system of A # H / A (%s)" % n, "pass")
        cfm: CFMReport = cfm_context(hs, hd)
        ok = cfm.isomorphic and all(cfm.maps_equal.values()) and cfm.alpha_matches_transport
        rep.add("CFM context isomorphic to the general context (%s)" % n, _yes(ok), PASS if ok else FAIL,
                alpha=cfm.alpha, maps_equal=cfm.maps_equal, cfm_context=_violations(cfm.cfm_check),
                isomorphism=_violations(cfm.isomorphism))


COMMANDS = {"check": cmd_check, "morita": cmd_morita, "cleft": cmd_cleft, "galois": cmd_galois, "hopf": cmd_hopf}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corings", description="Exact verification of coring, entwining and "
                                "Morita context constructions.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="structure document path, '-' for stdin, or fixture:<NAME>")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--attempts", type=int, default=32)
        sp.add_argument("--witness", action="append", default=[], help="document with extra module blocks")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--field", default=None, help="q or fp:<p>; overrides the document")
    fp = sub.add_parser("fixtures")
    fp.add_argument("name", help="one of %s, or 'list'" % ", ".join(FIXTURE_NAMES))
    fp.add_argument("--field", default=None)
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        if args.name == "list":
            out.write("\n".join(FIXTURE_NAMES) + "\n")
            return PASS
        try:
            doc = fixture_document(args.name)
        except DocumentError as e:
            sys.stderr.write("error: %s\n" % e)
            return INPUT_ERROR
        if args.field:
            doc.field = args.field.lower()
        out.write(emit(doc))
        return PASS
    t0 = time.perf_counter()
    rep = Report(args.command, args.input, None, args.seed, args.attempts)
    try:
        doc = load(args.input)
        for w in args.witness:
            extra = load(w)
            doc.blocks.extend(b for b in extra.blocks if b.kind == "module")
        ws = resolve(doc, args.field)
        rep = Report(args.command, args.input, ws, args.seed, args.attempts)
        COMMANDS[args.command](ws, rep, args)
    except (DocumentError, InputError, OSError, ContractViolation) as e:
        rep.add("input", "error", INPUT_ERROR, error=str(e))
        rep.code = INPUT_ERROR
    except ConsistencyError as e:
        rep.add("internal consistency", "error", FAIL, error=str(e))
    if args.json:
        out.write(rep.to_json())
    else:
        out.write(rep.to_text(time.perf_counter() - t0))
    return rep.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
