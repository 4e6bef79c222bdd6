"""Command-line entry point: ``qmacdonald {compute-p,norm,verify} ...``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .macdonald import (
    MacdonaldBasis,
    constant_term_corollary,
    m_expansion,
    norm_via_ct,
    verify_cauchy,
    verify_orthogonality,
    verify_theorem,
)
from .partitions import (
    Partition,
    b_lambda_armleg,
    b_lambda_product,
    norm_formula,
    norm_formula_poch,
    parse_partition,
    partitions_up_to,
)
from .residues import (
    residue_31,
    residue_31_series,
    sample_y,
    sigma_sum_crosscheck,
    single_var_residue_sum,
    verify_33,
    verify_lemma_n1,
    y_over_x2_pochhammer,
)
from .symlaurent import LaurentPoly

VERIFY_TARGETS = (
    "theorem", "ct", "orthogonality", "blambda", "normforms",
    "cauchy", "eq31", "lemma1", "eq33", "ressum",
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: Optional[str]
    n: Optional[int]
    k: Optional[int]
    m: Optional[int]
    lam: Optional[Partition]
    max_weight: Optional[int]
    degree: Optional[int]
    samples: int
    seed: int
    output: str
    cache_path: Optional[Path]

    def get(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value


class BasisStore:
    """Loads MacdonaldBasis objects from the cache directory and writes them back."""

    def __init__(self, directory: Optional[Path]) -> None:
        self.directory = directory
        self.loaded: dict[tuple[int, int], MacdonaldBasis] = {}

    def __call__(self, n: int, k: int) -> MacdonaldBasis:
        key = (n, k)
        if key not in self.loaded:
            if self.directory is None:
                self.loaded[key] = MacdonaldBasis(n, k)
            else:
                self.loaded[key] = MacdonaldBasis.load(self.directory, n, k)
        return self.loaded[key]

    def flush(self) -> None:
        if self.directory is None:
            return
        for basis in self.loaded.values():
            if basis.dirty:
                basis.save(self.directory)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _require_lambda(cfg: RunConfig, n: int) -> Partition:
    if cfg.lam is None:
        raise UsageError("--lambda is required")
    if cfg.lam.length > n:
        raise UsageError(f"partition {cfg.lam.key()} has more than n = {n} parts")
    return cfg.lam.with_n(n)


def cmd_compute_p(cfg: RunConfig, store: BasisStore) -> tuple[dict, bool]:
    n, k = cfg.get("n", 2), cfg.get("k", 2)
    lam = _require_lambda(cfg, n)
    basis = store(n, k)
    expansion = m_expansion(lam, basis)
    report = {
        "command": "compute-p",
        "lambda": list(lam.padded()),
        "n": n,
        "k": k,
        "m_basis": [{"mu": list(mu.padded()), "c": c.to_json()} for mu, c in expansion],
        "x_basis": basis.p(lam).to_json(),
    }
    text = [f"P{lam} with n = {n}, k = {k}", "m-basis:"]
    text += [f"  m{mu}: {c}" for mu, c in expansion]
    text.append(f"x-basis: {basis.p(lam)}")
    report["_text"] = text
    return report, True


def cmd_norm(cfg: RunConfig, store: BasisStore) -> tuple[dict, bool]:
    n, k = cfg.get("n", 2), cfg.get("k", 2)
    lam = _require_lambda(cfg, n)
    ct = norm_via_ct(lam, n, k, store(n, k))
    formula = norm_formula(lam, n, k)
    equal = ct == formula
    report = {
        "command": "norm",
        "lambda": list(lam.padded()),
        "n": n,
        "k": k,
        "ct": ct.to_json(),
        "formula": formula.to_json(),
        "equal": equal,
        "_text": [f"<P{lam}, P{lam}> (n = {n}, k = {k})", f"  constant term: {ct}", f"  formula:       {formula}", f"  equal: {equal}"],
    }
    return report, equal


def _verify_blambda(cfg: RunConfig, store: BasisStore) -> list[dict]:
    max_w, n_max, k_max = cfg.get("max_weight", 6), cfg.get("n", 4), cfg.get("k", 3)
    cases = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            for lam in partitions_up_to(max_w, n):
                ok = b_lambda_armleg(lam, k) == b_lambda_product(lam, n, k)
                cases.append({"lambda": list(lam.padded()), "n": n, "k": k, "pass": ok})
    return [{"identity": "blambda", "max_weight": max_w, "cases": cases, "pass": all(c["pass"] for c in cases)}]


def _verify_normforms(cfg: RunConfig, store: BasisStore) -> list[dict]:
    max_w, n_max, k_max = cfg.get("max_weight", 5), cfg.get("n", 4), cfg.get("k", 3)
    cases = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            for lam in partitions_up_to(max_w, n):
                ok = norm_formula(lam, n, k) == norm_formula_poch(lam, n, k)
                cases.append({"lambda": list(lam.padded()), "n": n, "k": k, "pass": ok})
    return [{"identity": "normforms", "max_weight": max_w, "cases": cases, "pass": all(c["pass"] for c in cases)}]


def _verify_eq31(cfg: RunConfig, store: BasisStore) -> list[dict]:
    k_max, top = cfg.get("k", 3), cfg.get("degree", 2)
    cases = []
    for k in range(1, k_max + 1):
        factor = y_over_x2_pochhammer(k)
        for l in range(k):
            for a in range(top + 1):
                for b in range(top + 1):
                    psi = LaurentPoly.monomial((a, b))
                    ok = residue_31(l, k, psi) * factor == residue_31_series(l, k, psi)
                    cases.append({"k": k, "l": l, "psi": [a, b], "pass": ok})
    return [{"identity": "eq31", "cases": cases, "pass": all(c["pass"] for c in cases)}]


def _verify_lemma1(cfg: RunConfig, store: BasisStore) -> list[dict]:
    k_max, top = cfg.get("k", 3), cfg.get("degree", 3)
    return [
        verify_lemma_n1(LaurentPoly.monomial((p,)), k)
        for k in range(1, k_max + 1)
        for p in range(top + 1)
    ]


def _verify_ressum(cfg: RunConfig, store: BasisStore) -> list[dict]:
    k_max, top = cfg.get("k", 4), cfg.get("degree", 10)
    cases = []
    for k in range(1, k_max + 1):
        for p in range(top + 1):
            by_terms, closed = single_var_residue_sum(p, k)
            cases.append({"k": k, "p": p, "value": closed.to_json(), "pass": by_terms == closed})
    return [{"identity": "ressum", "cases": cases, "pass": all(c["pass"] for c in cases)}]


def _verify_eq33(cfg: RunConfig, store: BasisStore) -> list[dict]:
    n, k = cfg.get("n", 2), cfg.get("k", 2)
    if cfg.lam is not None:
        lams = [_require_lambda(cfg, n)]
    else:
        lams = partitions_up_to(cfg.get("max_weight", 2), n)
    basis = store(n, k)
    reports = [verify_33(lam, n, k, cfg.samples, cfg.seed, basis) for lam in lams]
    if n <= 2:
        y = sample_y(n, random.Random(cfg.seed))
        reports += [sigma_sum_crosscheck(lam, n, k, y, basis) for lam in lams]
    return reports


def cmd_verify(cfg: RunConfig, store: BasisStore) -> tuple[dict, bool]:
    target = cfg.target
    n, k = cfg.get("n", 2), cfg.get("k", 2)
    runners: dict[str, Callable[[], list[dict]]] = {
        "theorem": lambda: [verify_theorem(n, k, cfg.get("max_weight", 4), store(n, k))],
        "ct": lambda: [constant_term_corollary(n, k)],
        "orthogonality": lambda: [
            verify_orthogonality(w, n, k, store(n, k)) for w in range(cfg.get("max_weight", 4) + 1)
        ],
        "blambda": lambda: _verify_blambda(cfg, store),
        "normforms": lambda: _verify_normforms(cfg, store),
        "cauchy": lambda: [
            verify_cauchy(cfg.get("m", n), n, k, cfg.get("degree", 3), store(n, k), store(cfg.get("m", n), k))
        ],
        "eq31": lambda: _verify_eq31(cfg, store),
        "lemma1": lambda: _verify_lemma1(cfg, store),
        "eq33": lambda: _verify_eq33(cfg, store),
        "ressum": lambda: _verify_ressum(cfg, store),
    }
    if target not in runners:
        raise UsageError(f"unknown verify target {target!r}; choose from {', '.join(VERIFY_TARGETS)}")
    reports = runners[target]()
    ok = all(r["pass"] for r in reports)
    text = [f"{r['identity']}: {'PASS' if r['pass'] else 'FAIL'}{_describe(r)}" for r in reports]
    text.append(f"verify {target}: {'PASS' if ok else 'FAIL'}")
    return {"command": "verify", "target": target, "seed": cfg.seed, "reports": reports, "pass": ok, "_text": text}, ok


def _describe(report: dict) -> str:
    bits = []
    for key in ("lambda", "n", "m", "k", "weight", "max_weight", "degree"):
        if key in report:
            bits.append(f"{key}={report[key]}")
    if "cases" in report:
        bits.append(f"{sum(c['pass'] for c in report['cases'])}/{len(report['cases'])} cases")
    if "pairs" in report:
        bits.append(f"{len(report['pairs'])} pairs")
    if "samples" in report:
        bits.append(f"{sum(s['pass'] for s in report['samples'])}/{len(report['samples'])} samples")
    return " (" + ", ".join(bits) + ")" if bits else ""


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="number of x variables")
    common.add_argument("--k", type=int, help="t = q^k")
    common.add_argument("--m", type=int, help="number of y variables (cauchy; defaults to n)")
    common.add_argument("--lambda", dest="lam", help="partition such as 2,1")
    common.add_argument("--max-weight", type=int)
    common.add_argument("--degree", type=int, help="degree cap / exponent bound")
    common.add_argument("--samples", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--cache", default=".cache", help="basis cache directory ('' disables)")

    parser = argparse.ArgumentParser(prog="qmacdonald", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute-p", parents=[common], help="P_lambda in the m- and x-bases")
    sub.add_parser("norm", parents=[common], help="<P_lambda, P_lambda> two ways")
    verify = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    verify.add_argument("target", help="one of: " + ", ".join(VERIFY_TARGETS))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    for name in ("n", "k", "m"):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise UsageError(f"--{name} must be a positive integer")
    for name in ("max_weight", "degree"):
        value = getattr(args, name)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    lam = None
    if args.lam is not None:
        try:
            lam = parse_partition(args.lam)
        except ValueError as exc:
            raise UsageError(f"invalid --lambda: {exc}") from exc
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        n=args.n,
        k=args.k,
        m=args.m,
        lam=lam,
        max_weight=args.max_weight,
        degree=args.degree,
        samples=args.samples,
        seed=args.seed,
        output="json" if args.json else "text",
        cache_path=Path(args.cache) if args.cache else None,
    )


COMMANDS = {"compute-p": cmd_compute_p, "norm": cmd_norm, "verify": cmd_verify}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        store = BasisStore(cfg.cache_path)
        report, ok = COMMANDS[cfg.command](cfg, store)
        store.flush()
    except UsageError as exc:
        print(f"qmacdonald: error: {exc}", file=sys.stderr)
        return 2
    text = report.pop("_text")
    if cfg.output == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write("\n".join(text) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
