"""Command-line front end: domain reports, verification suites, and mesh export.

Commands
    hodge-domains report --ranks R [--format json|text] [--out PATH]
    hodge-domains verify --ranks R --seed S --samples N [--classify-out PATH]
    hodge-domains mesh --subdivisions s --out PATH [--format off|json]

Exit codes: 0 success, 1 suite/audit failure, 2 invalid input, 3 resource
guard.  All randomness flows from the single --seed value, so identical
configurations produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import domain as domain_mod
from . import higgs as higgs_mod
from . import horizontal as horizontal_mod
from . import pi2 as pi2_mod
from . import rootcalc as rootcalc_mod
from . import spheremesh as spheremesh_mod
from .hodge import HodgeNumbers

SCHEMA = "hodge-domains/1"

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE_GUARD = 3

MAX_SUBDIVISIONS = 8
MAX_SAMPLES = 1_000_000
MAX_TOTAL_RANK = 20


class ResourceGuardError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    ranks: Optional[HodgeNumbers] = None
    seed: int = 0
    samples: int = 1000
    subdivisions: int = 0
    output: Optional[str] = None
    fmt: str = "json"
    classify_out: Optional[str] = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.samples > MAX_SAMPLES:
            raise ResourceGuardError(f"samples {self.samples} exceeds the guard {MAX_SAMPLES}")
        if self.subdivisions < 0:
            raise ValueError("subdivisions must be nonnegative")
        if self.subdivisions > MAX_SUBDIVISIONS:
            raise ResourceGuardError(
                f"subdivisions {self.subdivisions} exceeds the guard {MAX_SUBDIVISIONS}"
            )
        if self.ranks is not None and self.ranks.m > MAX_TOTAL_RANK:
            raise ResourceGuardError(
                f"total rank {self.ranks.m} exceeds the guard {MAX_TOTAL_RANK}"
            )


def _root_str(root) -> str:
    return f"e{root.plus_index + 1}-e{root.minus_index + 1}"


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def run_report(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    desc = domain_mod.describe_domain(ranks)
    rep = pi2_mod.pi2_report(ranks)
    gen = pi2_mod.superhorizontal_generation_report(ranks)
    pd = rootcalc_mod.parabolic_from_ranks(ranks)
    cert = rootcalc_mod.bracket_generating_check(pd)
    return {
        "schema": SCHEMA,
        "command": "report",
        "ranks": list(ranks.ranks),
        "domain": {
            "dim": desc.dim,
            "horizontal_rank": desc.horizontal_rank,
            "vertical_rank": desc.vertical_rank,
            "fiber_factors": [list(desc.fiber_factors[0]), list(desc.fiber_factors[1])],
            "interior_rank_one": desc.interior_rank_one,
        },
        "pi2": {
            "rank_flag_manifold": rep.rank_flag_manifold,
            "rank_domain": rep.rank_domain,
            "basis": [_root_str(b) for b in rep.basis],
            "kernel_basis": [list(c.coords) for c in rep.kernel_basis],
            "kernel_verified": rep.kernel_verified,
        },
        "superhorizontal": {
            "generators": [
                {"index": g.index, "middle_rank": g.middle_rank, "status": g.status}
                for g in gen.per_generator
            ],
            "fully_generated": gen.fully_generated,
            "interior_rank_one": gen.interior_rank_one,
        },
        "bracket_generation": {
            "ok": cert.ok,
            "levels": [
                {"level": lc.level, "dim": lc.dim, "achieved": lc.achieved}
                for lc in cert.levels
            ],
        },
    }


def _report_text(doc: dict) -> str:
    lines = [f"ranks {tuple(doc['ranks'])}"]
    d = doc["domain"]
    lines.append(
        f"domain: dim {d['dim']}, horizontal {d['horizontal_rank']}, "
        f"vertical {d['vertical_rank']}, interior_rank_one {d['interior_rank_one']}"
    )
    p = doc["pi2"]
    lines.append(
        f"pi2: flag manifold rank {p['rank_flag_manifold']}, domain rank {p['rank_domain']}, "
        f"basis {p['basis']}"
    )
    s = doc["superhorizontal"]
    gens = ", ".join(f"{g['index']}:{g['status']}" for g in s["generators"]) or "none"
    lines.append(f"superhorizontal generators: {gens}; fully_generated {s['fully_generated']}")
    b = doc["bracket_generation"]
    lines.append(f"bracket generation: {'ok' if b['ok'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _suite_dimensions(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    r = ranks.ranks
    desc = domain_mod.describe_domain(ranks)
    checks = 0
    direct = sum(r[i] * r[j] for i in range(len(r)) for j in range(i + 1, len(r)))
    ok = desc.dim == direct
    checks += 1
    ok = ok and desc.horizontal_rank + desc.vertical_rank <= desc.dim
    ok = ok and ((desc.horizontal_rank + desc.vertical_rank == desc.dim) == (ranks.k <= 2))
    checks += 2
    base = domain_mod.hodge_flag(ranks)
    ok = ok and domain_mod.flag_in_period_domain(base).in_domain
    checks += 1
    if len(r) == 3 and r[0] == r[2] == 1:
        n = r[1]
        ok = ok and desc.dim == 2 * n + 1 and desc.horizontal_rank == 2 * n
        checks += 2
    return {"passed": bool(ok), "details": {"checks": checks, "dim": desc.dim}}


def _suite_pi2(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    pd = rootcalc_mod.parabolic_from_ranks(ranks)
    oracle = pi2_mod.class_closure_oracle(pd)
    mismatches = sum(
        1 for root in pd.sorted_n_roots() if pi2_mod.class_of_root(root, pd) != oracle[root]
    )
    rep = pi2_mod.pi2_report(ranks)
    kernel_ok = rep.kernel_verified and all(
        pi2_mod.pi_u_star(c) == 0 for c in rep.kernel_basis
    )
    passed = mismatches == 0 and kernel_ok
    return {
        "passed": bool(passed),
        "details": {"n_roots": len(pd.n_roots), "mismatches": mismatches, "kernel_verified": kernel_ok},
    }


def _suite_bracket_generation(cfg: RunConfig) -> dict:
    pd = rootcalc_mod.parabolic_from_ranks(cfg.ranks)
    cert = rootcalc_mod.bracket_generating_check(pd)
    return {
        "passed": bool(cert.ok),
        "details": {
            "levels": [[lc.level, lc.achieved, lc.dim] for lc in cert.levels],
        },
    }


def _suite_flags(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    # exact membership tests cost O(m^3) rational arithmetic per flag
    count = min(cfg.samples, 50 if ranks.m <= 10 else 10)
    rng = random.Random(cfg.seed * 7919 + 11)
    ok = True
    for _ in range(count):
        flag = domain_mod.perturbed_flag(ranks, rng)
        ok = ok and domain_mod.flag_in_period_domain(flag).in_domain
        plane = domain_mod.project_to_symmetric_space(flag, "indefinite")
        gram = domain_mod.gram_matrix(plane, ranks.signature_signs())
        ok = ok and domain_mod.hermitian_definiteness(gram) == "positive"
        u = domain_mod.random_block_unitary(ranks, rng)
        moved = domain_mod.apply_matrix(u, flag)
        ok = ok and domain_mod.flag_in_period_domain(moved).in_domain
        round_trip = domain_mod.flag_loads(domain_mod.flag_dumps(flag))
        ok = ok and round_trip.basis == flag.basis
    return {"passed": bool(ok), "details": {"flags": count}}


def _suite_pu2n(cfg: RunConfig) -> dict:
    r = cfg.ranks.ranks
    if len(r) != 3 or r[0] != 1 or r[2] != 1:
        return {"applicable": False, "passed": True, "details": {"reason": "ranks are not (1, n, 1)"}}
    n = r[1]
    record = None
    sink = None
    if cfg.classify_out:
        sink = open(cfg.classify_out, "w")

        def record(entry):
            sink.write(json.dumps(entry, sort_keys=True) + "\n")

    try:
        rep = horizontal_mod.verify_pu2n_criterion(n, cfg.samples, cfg.seed, record=record)
    finally:
        if sink is not None:
            sink.close()
    if n == 1:
        passed = (
            rep.mismatches == 0
            and not rep.found_regular_isotropic
            and rep.isotropic_noncomplex_count == 0
        )
    else:
        passed = rep.mismatches == 0 and rep.found_regular_isotropic
    return {
        "passed": bool(passed),
        "details": {
            "n": n,
            "samples": rep.samples,
            "mismatches": rep.mismatches,
            "regular": rep.regular_count,
            "isotropic": rep.isotropic_count,
            "found_regular_isotropic": rep.found_regular_isotropic,
            "isotropic_noncomplex": rep.isotropic_noncomplex_count,
        },
    }


def _suite_stabilizers(cfg: RunConfig) -> dict:
    ok = True
    cases = 0
    for n in range(1, 11):
        for k in range(1, n + 1):
            dims = horizontal_mod.stabilizer_dimension(n, k)
            oracle = horizontal_mod.isotropic_tuple_orbit_dimension(n, k)
            ok = ok and dims.stab_dim + dims.orbit_dim == n * (2 * n + 1)
            ok = ok and dims.orbit_dim == oracle == 2 * n * k - k * (k - 1) // 2
            cases += 1
    return {"passed": bool(ok), "details": {"cases": cases}}


def _suite_higgs(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    interior = [i for i in range(1, ranks.k) if ranks.ranks[i] == 1]
    if not interior:
        return {
            "applicable": False,
            "passed": True,
            "details": {"reason": "no interior rank-one block"},
        }
    count = min(cfg.samples, 200)
    ok = True
    triggered = 0
    for pos, i in enumerate(interior):
        shape = HodgeNumbers((ranks.ranks[i - 1], 1, ranks.ranks[i + 1]))
        for j in range(count):
            strategy = "nullspace" if j % 2 == 0 else "pullback"
            field = higgs_mod.random_commuting_higgs(
                shape, m_t=2 + j % 2, seed=cfg.seed * 104729 + pos * 1000 + j, strategy=strategy
            )
            verdict = higgs_mod.rank_one_lemma_check(field, 1)
            ok = ok and verdict.holds
            if verdict.triggered:
                triggered += 1
            round_trip = higgs_mod.higgs_loads(higgs_mod.higgs_dumps(field))
            ok = ok and round_trip.theta == field.theta
    return {
        "passed": bool(ok),
        "details": {"fields": count * len(interior), "triggered": triggered},
    }


def _suite_su22(cfg: RunConfig) -> dict:
    ranks = cfg.ranks
    admissible = [i for i in range(ranks.k - 1) if ranks.ranks[i + 1] >= 2]
    if not admissible:
        return {
            "applicable": False,
            "passed": True,
            "details": {"reason": "no middle block of rank >= 2"},
        }
    ok = True
    for i in admissible:
        emb = horizontal_mod.su22_embedding(ranks, i)
        ok = ok and emb.checks.all_pass() and emb.sub_ranks == (1, 2, 1)
    return {"passed": bool(ok), "details": {"walls": admissible}}


def _suite_mesh(cfg: RunConfig) -> dict:
    tri = spheremesh_mod.octahedron()
    ok = True
    fineness_prev = None
    for s in range(0, 4):
        if s > 0:
            tri = spheremesh_mod.subdivide(tri)
        coloring = spheremesh_mod.three_color(tri)
        audit = spheremesh_mod.audit_mesh(tri, coloring)
        ok = ok and audit["even"] and audit["proper_coloring"]
        ok = ok and audit["euler_characteristic"] == 2 and audit["gluing_euler"] == 2
        ok = ok and audit["circumcenters_inside"]
        ok = ok and audit["max_equidistance_residual"] < 1e-10
        ok = ok and audit["gluing_closed"] and audit["gluing_links_single_cycles"]
        if fineness_prev is not None:
            ok = ok and audit["fineness"] < fineness_prev
        fineness_prev = audit["fineness"]
    return {"passed": bool(ok), "details": {"levels": 4}}


_SUITES = (
    ("dimensions", _suite_dimensions),
    ("pi2_calculus", _suite_pi2),
    ("bracket_generation", _suite_bracket_generation),
    ("flags", _suite_flags),
    ("pu2n_criterion", _suite_pu2n),
    ("stabilizer_dimensions", _suite_stabilizers),
    ("higgs_rank_one", _suite_higgs),
    ("su22_embedding", _suite_su22),
    ("mesh", _suite_mesh),
)


def run_verify(cfg: RunConfig) -> dict:
    suites = []
    all_passed = True
    for name, fn in _SUITES:
        try:
            result = fn(cfg)
        except Exception as exc:  # a crashing suite is a failing suite
            result = {"passed": False, "details": {"error": f"{type(exc).__name__}: {exc}"}}
        entry = {
            "name": name,
            "applicable": result.get("applicable", True),
            "passed": bool(result["passed"]),
            "details": result.get("details", {}),
        }
        if entry["applicable"] and not entry["passed"]:
            all_passed = False
        suites.append(entry)
    return {
        "schema": SCHEMA,
        "command": "verify",
        "ranks": list(cfg.ranks.ranks),
        "seed": cfg.seed,
        "samples": cfg.samples,
        "suites": suites,
        "all_passed": all_passed,
    }


def _verify_text(doc: dict) -> str:
    lines = [f"verify ranks {tuple(doc['ranks'])} seed {doc['seed']} samples {doc['samples']}"]
    for s in doc["suites"]:
        if not s["applicable"]:
            status = "SKIP"
        else:
            status = "PASS" if s["passed"] else "FAIL"
        lines.append(f"  [{status}] {s['name']}")
    lines.append("all passed" if doc["all_passed"] else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# mesh export
# ---------------------------------------------------------------------------


def export_mesh(cfg: RunConfig) -> tuple[int, list[str]]:
    """Build, audit and write the subdivided colored octahedron.

    Returns (exit_code, written_paths); nothing is written if an audit fails.
    """
    tri = spheremesh_mod.octahedron()
    for _ in range(cfg.subdivisions):
        tri = spheremesh_mod.subdivide(tri)
    coloring = spheremesh_mod.three_color(tri)
    audit = spheremesh_mod.audit_mesh(tri, coloring)
    good = (
        audit["even"]
        and audit["proper_coloring"]
        and audit["euler_characteristic"] == 2
        and audit["gluing_euler"] == 2
        and audit["circumcenters_inside"]
        and audit["gluing_closed"]
        and audit["gluing_links_single_cycles"]
    )
    if not good:
        return EXIT_SUITE_FAILURE, []
    out = Path(cfg.output) if cfg.output else Path(f"octahedron_s{cfg.subdivisions}.off")
    if cfg.fmt == "json":
        doc = spheremesh_mod.sidecar_document(tri, coloring)
        doc["vertices"] = [[float(x) for x in v] for v in tri.vertices]
        doc["faces"] = [list(f) for f in tri.faces]
        target = out if out.suffix == ".json" else out.with_suffix(".json")
        target.write_text(json.dumps(doc, sort_keys=True, indent=1))
        return EXIT_OK, [str(target)]
    if out.suffix == ".json":
        raise ValueError("OFF output path must not end in .json (the sidecar uses it)")
    sidecar = out.with_suffix(".json")
    out.write_text(spheremesh_mod.to_off(tri))
    sidecar.write_text(spheremesh_mod.sidecar_dumps(tri, coloring))
    return EXIT_OK, [str(out), str(sidecar)]


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodge-domains",
        description="Invariants of PU(p,q) period domains, verified exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="combinatorial report for a rank tuple")
    rep.add_argument("--ranks", required=True, help="comma-separated ranks, e.g. 1,2,1")
    rep.add_argument("--format", default="json", choices=("json", "text"))
    rep.add_argument("--out", default=None)

    ver = sub.add_parser("verify", help="run the verification suites")
    ver.add_argument("--ranks", required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--format", default="json", choices=("json", "text"))
    ver.add_argument("--out", default=None)
    ver.add_argument(
        "--classify-out",
        default=None,
        help="stream per-sample plane classifications as JSON lines to this path",
    )

    mesh = sub.add_parser("mesh", help="export the subdivided colored octahedron")
    mesh.add_argument("--subdivisions", type=int, default=0)
    mesh.add_argument("--out", default=None)
    mesh.add_argument("--format", default="off", choices=("off", "json"))
    return parser


def _emit(doc: dict, fmt: str, out: Optional[str], to_text) -> None:
    payload = to_text(doc) if fmt == "text" else json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            cfg = RunConfig(
                command="report",
                ranks=HodgeNumbers.parse(args.ranks),
                fmt=args.format,
                output=args.out,
            )
            _emit(run_report(cfg), cfg.fmt, cfg.output, _report_text)
            return EXIT_OK
        if args.command == "verify":
            cfg = RunConfig(
                command="verify",
                ranks=HodgeNumbers.parse(args.ranks),
                seed=args.seed,
                samples=args.samples,
                fmt=args.format,
                output=args.out,
                classify_out=args.classify_out,
            )
            doc = run_verify(cfg)
            _emit(doc, cfg.fmt, cfg.output, _verify_text)
            return EXIT_OK if doc["all_passed"] else EXIT_SUITE_FAILURE
        if args.command == "mesh":
            cfg = RunConfig(
                command="mesh",
                subdivisions=args.subdivisions,
                output=args.out,
                fmt=args.format,
            )
            code, written = export_mesh(cfg)
            for path in written:
                sys.stdout.write(path + "\n")
            if code != EXIT_OK:
                sys.stderr.write("mesh audit failed; nothing written\n")
            return code
    except ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return EXIT_RESOURCE_GUARD
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID_INPUT
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
