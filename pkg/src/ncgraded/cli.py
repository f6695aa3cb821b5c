"""Command-line pipeline: select or parse an algebra, complete it to the
requested degree, and run the chosen checks, emitting a text summary and an
optional JSON report.

Note -h belongs to the homological bound, so the parser runs with
add_help=False and help lives on --help.

The normal-element scan lives here rather than next to the certified
invariants: its answer depends on the chosen finite field and on an
enumeration cutoff, so it is evidence, not a theorem, and the report says so.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone

from .exactla import F32003, FieldSpec, RowSpan, field_from_name
from .freealg import FreeElement
from .presentation import (FilteredPresentation, Presentation,
                           PresentationError, builtin, builtin_names,
                           homogenize, opposite, parse)
from .groebner import RewriteSystem, complete, normal_form, normal_words
from .hilbert import (ClaimSyntaxError, gk_estimate, hilbert_function,
                      verify_rational)
from .resolution import betti, gldim_upto, koszul_check, minimal_resolution
from .duality import (ASVerdict, as_check, diagonal_bimodule_resolution,
                      ext_k_A, hochschild_ext, invariant_report,
                      rigidity_check)

CHECK_NAMES = ("hilbert", "betti", "koszul", "asregular", "hochschild",
               "rigidity", "normal-elements")
DEFAULT_CHECKS = ("hilbert", "betti", "koszul", "asregular")
SCAN_GUARD = 1 << 22


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    input: str
    is_path: bool = False
    field: FieldSpec = F32003
    degree_bound: int = 8
    homological_bound: int = 5
    checks: tuple = DEFAULT_CHECKS
    claim: str | None = None
    output: str = "text"
    json_path: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.degree_bound < 2:
            raise UsageError("degree bound must be at least 2")
        if self.homological_bound < 1:
            raise UsageError("homological bound must be at least 1")
        bad = [c for c in self.checks if c not in CHECK_NAMES]
        if bad:
            raise UsageError(f"unknown checks: {', '.join(bad)} "
                             f"(known: {', '.join(CHECK_NAMES)})")


# ---------------------------------------------------------------------------
# heuristic scans


def normal_element_scan(rs: RewriteSystem, dmax: int,
                        guard: int = SCAN_GUARD) -> dict:
    """Enumerate nonzero degree-d elements up to scalar for d <= dmax and
    test two-sided normality (g*v in v*A and v*g in A*v for every generator).
    Prime fields only; degrees whose point count p**dim exceeds the guard are
    skipped and listed."""
    f = rs.field
    if f.kind != "Fp":
        raise UsageError("normal-element scan needs a finite prime field")
    p = f.p
    gdegs = rs.degrees
    maxg = max(gdegs)
    findings: dict = {"field": f.describe(), "heuristic": True,
                      "degrees": {}, "skipped": []}
    scannable = False
    for d in range(1, dmax + 1):
        basis = normal_words(rs, d)
        n = len(basis)
        if n == 0:
            continue
        if p ** n > guard:
            findings["skipped"].append(d)
            continue
        scannable = True
        found = _scan_degree(rs, d, basis, p)
        names = rs.names
        reps = []
        for coords in found:
            terms = {w: c for w, c in zip(basis, coords) if not f.is_zero(c)}
            reps.append(FreeElement(f, gdegs, terms).format(names))
        findings["degrees"][d] = {
            "tested": (p ** n - 1) // (p - 1),
            "normal": reps,
            "found": len(found),
        }
    if not scannable:
        raise UsageError(f"no degree up to {dmax} fits the enumeration guard "
                         f"{p}^dim <= 2^22")
    return findings


def _scan_degree(rs: RewriteSystem, d: int, basis: list, p: int) -> list:
    """Normal elements of degree d as coefficient tuples over the given
    normal-word basis, first nonzero coordinate fixed to 1."""
    f = rs.field
    n = len(basis)
    gens = list(range(len(rs.degrees)))
    # product coordinates per target degree, packed as bit masks over F_2
    # and as coordinate dicts otherwise
    targets = sorted({d + rs.degrees[g] for g in gens})
    tbasis = {e: normal_words(rs, e) for e in targets}
    tindex = {e: {w: i for i, w in enumerate(tbasis[e])} for e in targets}

    def coords(elem: FreeElement, e: int):
        idx = tindex[e]
        if p == 2:
            m = 0
            for w in elem.terms:
                m |= 1 << idx[w]
            return m
        return {idx[w]: c for w, c in elem.terms.items()}

    lcol = {}   # (g, i) -> coords of NF(x_g * basis[i])
    rcol = {}   # (g, i) -> coords of NF(basis[i] * x_g)
    for g in gens:
        e = d + rs.degrees[g]
        for i, w in enumerate(basis):
            lcol[(g, i)] = coords(normal_form(rs, rs.monomial((g,) + w)), e)
            rcol[(g, i)] = coords(normal_form(rs, rs.monomial(w + (g,))), e)

    found = []
    for v in _projective_points(n, p):
        support = [i for i, c in enumerate(v) if c]
        if p == 2:
            lv = {g: 0 for g in gens}
            rv = {g: 0 for g in gens}
            for i in support:
                for g in gens:
                    lv[g] ^= lcol[(g, i)]
                    rv[g] ^= rcol[(g, i)]
            # spans v*A_e and A_e*v per generator degree
            ok = True
            for e in targets:
                degset = [g for g in gens if d + rs.degrees[g] == e]
                right_rows = _f2_echelon([rv[g] for g in degset])
                left_rows = _f2_echelon([lv[g] for g in degset])
                for g in degset:
                    if _f2_reduce(lv[g], right_rows) or _f2_reduce(rv[g], left_rows):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(tuple(f.from_int(c) for c in v))
            continue
        lv = {}
        rv = {}
        for g in gens:
            accL: dict = {}
            accR: dict = {}
            for i in support:
                ci = f.from_int(v[i])
                for r, c in lcol[(g, i)].items():
                    s = f.add(accL.get(r, f.zero()), f.mul(ci, c))
                    if f.is_zero(s):
                        accL.pop(r, None)
                    else:
                        accL[r] = s
                for r, c in rcol[(g, i)].items():
                    s = f.add(accR.get(r, f.zero()), f.mul(ci, c))
                    if f.is_zero(s):
                        accR.pop(r, None)
                    else:
                        accR[r] = s
            lv[g], rv[g] = accL, accR
        ok = True
        for e in targets:
            degset = [g for g in gens if d + rs.degrees[g] == e]
            width = len(tbasis[e])
            right = RowSpan(f, width)
            left = RowSpan(f, width)
            for g in degset:
                right.add(rv[g])
                left.add(lv[g])
            for g in degset:
                if lv[g] and not right.contains(lv[g]):
                    ok = False
                    break
                if rv[g] and not left.contains(rv[g]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(f.from_int(c) for c in v))
    return found


def _projective_points(n: int, p: int):
    """Coefficient tuples with first nonzero coordinate 1, in lexicographic
    order of the pivot position then the remaining digits."""
    for k in range(n):
        tail = n - k - 1
        for counter in range(p ** tail):
            coords = [0] * n
            coords[k] = 1
            c = counter
            for pos in range(n - 1, k, -1):
                coords[pos] = c % p
                c //= p
            yield tuple(coords)


def _f2_echelon(rows: list) -> list:
    out: list = []
    for r in rows:
        for b in out:
            r = min(r, r ^ b)
        if r:
            out.append(r)
            out.sort(reverse=True)
    return out


def _f2_reduce(r: int, rows: list) -> int:
    for b in rows:
        r = min(r, r ^ b)
    return r


def confluence_probe(p: Presentation, degree_bound: int, seed: int) -> dict:
    """Re-run completion with the relations fed in a seeded random order and
    random nonzero rescalings; for a fixed term order the completed lead set
    and the graded dimensions must come out identical."""
    rng = random.Random(seed)
    rels = list(p.relations)
    rng.shuffle(rels)
    f = p.field
    scaled = []
    for r in rels:
        while True:
            c = f.from_int(rng.randrange(1, 1009))
            if not f.is_zero(c):
                break
        scaled.append(r.scaled(c))
    q = Presentation(p.field, p.generators, scaled, label=p.label)
    rs0 = complete(p, degree_bound=degree_bound)
    rs1 = complete(q, degree_bound=degree_bound)
    leads0 = sorted(rs0.leads())
    leads1 = sorted(rs1.leads())
    dims0 = hilbert_function(rs0, degree_bound).dims
    dims1 = hilbert_function(rs1, degree_bound).dims
    return {"seed": seed, "leads_match": leads0 == leads1,
            "dims_match": dims0 == dims1,
            "agrees": leads0 == leads1 and dims0 == dims1}


# ---------------------------------------------------------------------------
# pipeline


def _ext_json(t) -> dict:
    return {
        "side": t.side,
        "entries": {f"{i},{j}": n for (i, j), n in sorted(t.entries.items())},
        "certified": {f"{i},{j}": bool(c)
                      for (i, j), c in sorted(t.certified.items())},
        "zero_certified": {str(i): bool(c)
                           for i, c in sorted(t.zero_certified.items())},
        "window": list(t.window),
        "levels": list(t.levels),
        "level_shift": {str(i): s for i, s in sorted(t.level_shift.items())},
        "notes": list(t.notes),
    }


def _load_presentation(cfg: RunConfig):
    notes = []
    if cfg.is_path:
        try:
            with open(cfg.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {cfg.input}: {e}") from e
        p = parse(text)
        if p.field != cfg.field:
            notes.append(f"field {p.field.describe()} comes from the file "
                         "header; --field applies to builtins only")
    else:
        p = builtin(cfg.input, field=cfg.field)
    if isinstance(p, FilteredPresentation):
        p = homogenize(p)
        notes.append("filtered input homogenized with a central degree-1 "
                     "variable before analysis")
    return p, notes


def run(cfg: RunConfig) -> tuple[dict, int]:
    report: dict = {
        "algebra": None,
        "field": cfg.field.describe(),
        "bounds": {"degree": cfg.degree_bound,
                   "homological": cfg.homological_bound},
        "checks": list(cfg.checks),
        "seed": cfg.seed,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "notes": [],
    }
    exit_code = 0
    p, notes = _load_presentation(cfg)
    report["algebra"] = p.label
    report["field"] = p.field.describe()
    report["notes"].extend(notes)

    maxrel = max((r.degree() for r in p.relations), default=2)
    if cfg.degree_bound < maxrel:
        raise UsageError(f"degree bound {cfg.degree_bound} is below the "
                         f"highest relation degree {maxrel}")

    rs = complete(p, degree_bound=cfg.degree_bound)
    report["groebner"] = {
        "rules": len(rs.leads()),
        "globally_complete": rs.globally_complete,
        "complete_below": rs.complete_below,
        "stats": rs.stats,
    }
    report["seed_probe"] = confluence_probe(p, min(cfg.degree_bound, 5),
                                            cfg.seed)

    dims = hilbert_function(rs, cfg.degree_bound, label=p.label)
    if "hilbert" in cfg.checks:
        hil: dict = {"dims": list(dims.dims), "certified_to": dims.certified_to}
        gk = gk_estimate(dims)
        hil["gk"] = {"value": gk.value, "exponential": gk.exponential,
                     "window": list(gk.window), "detail": gk.detail}
        if cfg.claim is not None:
            chk = verify_rational(dims, cfg.claim)
            hil["claim"] = {"text": cfg.claim, "ok": chk.ok,
                            "compared_to": chk.compared_to,
                            "first_mismatch": chk.first_mismatch,
                            "detail": chk.detail}
            if not chk.ok:
                exit_code = 1
        report["hilbert"] = hil

    res = tab = gl = None
    if {"betti", "koszul", "asregular"} & set(cfg.checks):
        res = minimal_resolution(rs, cfg.homological_bound, cfg.degree_bound)
        tab = betti(res)
        gl = gldim_upto(res, tab)
        bet: dict = {
            "entries": {f"{i},{j}": n for (i, j), n in sorted(tab.entries.items())},
            "certified_internal": tab.certified_internal,
            "certified_homological": tab.certified_homological,
            "stage_complete": {str(i): bool(v)
                               for i, v in sorted(tab.stage_complete.items())},
            "gldim": {"value": gl.value, "certified": gl.certified,
                      "reason": gl.reason},
        }
        if "koszul" in cfg.checks:
            ko = koszul_check(res, tab, dims)
            bet["koszul"] = {"applicable": ko.applicable, "verdict": ko.verdict,
                             "diagonal_in_window": ko.diagonal_in_window,
                             "identity_to": ko.identity_to,
                             "certified_stages": ko.certified_stages,
                             "detail": ko.detail}
        if "betti" in cfg.checks or "koszul" in cfg.checks:
            report["betti"] = bet

    asv = None
    if "asregular" in cfg.checks:
        t_left = ext_k_A(rs, res)
        rs_r = complete(opposite(p), degree_bound=cfg.degree_bound)
        res_r = minimal_resolution(rs_r, cfg.homological_bound,
                                   cfg.degree_bound)
        t_right = ext_k_A(rs_r, res_r)
        asv = as_check(t_left, t_right, gldim=gl)
        report["ext_k_A"] = {"left": _ext_json(t_left),
                             "right": _ext_json(t_right)}
        report["as_verdict"] = {
            "status": asv.status, "n": asv.n, "l": asv.l,
            "witness": list(asv.witness) if asv.witness else None,
            "certified_bounds": asv.certified_bounds,
            "notes": list(asv.notes),
        }

    hoch = rig = None
    if {"hochschild", "rigidity"} & set(cfg.checks):
        dres, dtab = diagonal_bimodule_resolution(p, cfg.homological_bound,
                                                  cfg.degree_bound)
        hoch = hochschild_ext(dres.rs, dres)
        if "hochschild" in cfg.checks:
            report["hochschild"] = _ext_json(hoch)
            report["hochschild"]["bimodule_betti"] = {
                f"{i},{j}": n for (i, j), n in sorted(dtab.entries.items())}
        if "rigidity" in cfg.checks:
            rig = rigidity_check(hoch, dims)
            twist = None
            if rig.twist_on_generators is not None:
                names = [g.name for g in p.generators]
                twist = {k: v.format(names)
                         for k, v in rig.twist_on_generators.items()}
            report["rigidity"] = {
                "concentrated_at": rig.concentrated_at,
                "graded_match": rig.graded_match,
                "twist_on_generators": twist,
                "certified_bounds": rig.certified_bounds,
                "notes": list(rig.notes),
            }

    if asv is not None or rig is not None:
        gk_for_report = gk_estimate(dims) if asv and asv.status == "fails" else None
        inv = invariant_report(asv or ASVerdict("inconclusive"), rig,
                               tab if tab is not None else None,
                               gk=gk_for_report)
        report["invariants"] = {
            "fhtr": inv["fhtr"],
            "htr_QA_conditional": inv["htr_QA_conditional"],
            "hammerhead": inv["hammerhead"],
        }
        report["unchecked_hypotheses"] = inv["unchecked_hypotheses"]
        report["notes"].extend(inv["notes"])

    if "normal-elements" in cfg.checks:
        report["normal_elements"] = normal_element_scan(
            rs, min(cfg.degree_bound - max(rs.degrees), 4))

    return report, exit_code


def render_text(report: dict) -> str:
    lines = [f"algebra {report['algebra']} over {report['field']}, "
             f"degree bound {report['bounds']['degree']}, "
             f"homological bound {report['bounds']['homological']}"]
    gb = report.get("groebner")
    if gb:
        state = ("complete" if gb["globally_complete"]
                 else f"complete below {gb['complete_below']}")
        lines.append(f"rewriting: {gb['rules']} rules, {state}")
    hil = report.get("hilbert")
    if hil:
        lines.append("hilbert: " + " ".join(str(n) for n in hil["dims"]) +
                     f" (certified to {hil['certified_to']})")
        if "claim" in hil:
            c = hil["claim"]
            lines.append(f"claim {c['text']}: " +
                         ("ok" if c["ok"] else f"MISMATCH ({c['detail']})"))
        g = hil["gk"]
        lines.append("growth: " + ("exponential" if g["exponential"]
                                   else f"estimate {g['value']:.2f}"))
    bet = report.get("betti")
    if bet:
        lines.append("betti: " + " ".join(
            f"b[{k}]={v}" for k, v in bet["entries"].items()))
        gl = bet["gldim"]
        lines.append(f"gldim: {gl['value']} "
                     f"({'certified' if gl['certified'] else gl['reason']})")
        if "koszul" in bet:
            ko = bet["koszul"]
            lines.append("koszul: " + (
                "not applicable" if not ko["applicable"] else
                ("holds in window, " + ko["detail"]) if ko["verdict"]
                else ko["detail"]))
    if "as_verdict" in report:
        av = report["as_verdict"]
        txt = av["status"]
        if av["n"] is not None:
            txt += f"({av['n']},{av['l']})"
        if av["witness"]:
            txt += f" witness={av['witness']}"
        lines.append("asregular: " + txt)
    if "hochschild" in report:
        h = report["hochschild"]
        lines.append("hochschild: entries " + (
            " ".join(f"H[{k}]={v}" for k, v in h["entries"].items()) or "none"))
    if "rigidity" in report:
        r = report["rigidity"]
        lines.append(f"rigidity: concentrated_at={r['concentrated_at']} "
                     f"graded_match={r['graded_match']} "
                     f"twist={r['twist_on_generators']}")
    if "invariants" in report:
        lines.append("invariants: " + json.dumps(report["invariants"],
                                                 sort_keys=True))
    if "normal_elements" in report:
        ne = report["normal_elements"]
        for d, data in sorted(ne["degrees"].items()):
            lines.append(f"normal elements degree {d}: "
                         f"{data['found']} of {data['tested']} tested"
                         + (" [" + "; ".join(data["normal"][:8]) + "]"
                            if data["normal"] else ""))
        if ne["skipped"]:
            lines.append("normal elements: degrees skipped by guard: "
                         + ", ".join(map(str, ne["skipped"])))
        lines.append("normal elements: heuristic evidence over "
                     + ne["field"] + " only")
    probe = report.get("seed_probe")
    if probe:
        lines.append(f"seed probe {probe['seed']}: "
                     + ("agrees" if probe["agrees"] else "DISAGREES"))
    for n in report.get("notes", []):
        lines.append("note: " + n)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncgraded", add_help=False,
        description="homological analysis of finitely presented graded "
                    "algebras (help: --help; -h is the homological bound)")
    ap.add_argument("--help", action="help",
                    help="show this help message and exit")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME",
                     help="corpus algebra: " + ", ".join(builtin_names()))
    src.add_argument("--input", metavar="FILE",
                     help="presentation file in the DSL")
    ap.add_argument("--field", default="F32003",
                    help="Q or F<p> (builtins only; files carry their field)")
    ap.add_argument("-d", "--degree-bound", type=int, default=8)
    ap.add_argument("-h", "--homological-bound", type=int, default=5)
    ap.add_argument("--check", default=",".join(DEFAULT_CHECKS),
                    help="comma list from: " + ", ".join(CHECK_NAMES))
    ap.add_argument("--claim", default=None,
                    help="rational function for the graded dims, e.g. "
                         "\"1/(1-t)^2\"")
    ap.add_argument("--json", default=None, metavar="PATH",
                    help="also write the JSON report here ('-' for stdout)")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        field = field_from_name(ns.field)
        cfg = RunConfig(
            input=ns.builtin or ns.input,
            is_path=ns.input is not None,
            field=field,
            degree_bound=ns.degree_bound,
            homological_bound=ns.homological_bound,
            checks=tuple(s.strip() for s in ns.check.split(",") if s.strip()),
            claim=ns.claim,
            output="json" if ns.json else "text",
            json_path=ns.json,
            seed=ns.seed,
        )
        report, code = run(cfg)
    except (UsageError, PresentationError, ClaimSyntaxError, ValueError) as e:
        print(f"ncgraded: error: {e}", file=sys.stderr)
        return 2
    text = render_text(report)
    payload = json.dumps(report, sort_keys=True, indent=2)
    if cfg.json_path == "-":
        print(payload)
    else:
        print(text)
        if cfg.json_path:
            with open(cfg.json_path, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
