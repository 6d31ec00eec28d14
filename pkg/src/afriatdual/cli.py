"""Command-line front end.

Exit codes: 0 when the property holds or the requested object was found,
1 when it fails or is absent, 2 on input or numerical errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .consistency import check_assumption_a, check_cyclical_consistency
from .housing import equilibrium_holds, is_pareto, no_trade_prices, top_trading_cycles, welfare_gap
from .indices import full_report
from .io import MATRIX_FIELDS, load_matrix_document, parse_demand_csv, parse_matrix_json
from .model import DEFAULT_TOL, ConvergenceError, DemandDataset, InputError, check_tol, r_from_costs, r_from_demand
from .rationalize import (
    NotRationalizableError,
    afriat_efficiency_index,
    afriat_utility,
    find_certificate,
    verify_certificate,
)

log = logging.getLogger("afriatdual")

KINDS = ("demand-csv", "r-json", "cost-json")


def _clean(obj):
    """JSON-ready copy with floats at 12 significant digits and 1-based index lists left as ints."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(f"{float(obj):.12g}")
        return 0.0 if x == 0 else x
    return obj


def _one_based(seq):
    return None if seq is None else [int(i) + 1 for i in seq]


def _floats(text: str, what: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise InputError(f"{what} must be comma-separated numbers, got {text!r}") from None


class Job:
    def __init__(self, args):
        self.args = args
        self.tol = check_tol(args.tol)
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        self.kind = args.kind or self._infer_kind(args.input, text)
        self.doc = None
        self.dataset: DemandDataset | None = None
        if self.kind == "demand-csv":
            self.dataset = parse_demand_csv(text)
            self.matrix = r_from_demand(self.dataset)
        else:
            self.matrix = parse_matrix_json(text, self.kind, self.tol)
            self.doc = load_matrix_document(text)
        log.debug("loaded %s input with n = %d", self.kind, self.matrix.shape[0])

    @staticmethod
    def _infer_kind(path: str, text: str) -> str:
        if path.endswith(".csv"):
            return "demand-csv"
        try:
            doc = json.loads(text)
        except json.JSONDecodeError:
            return "demand-csv"
        for kind, key in MATRIX_FIELDS.items():
            if isinstance(doc, dict) and key in doc:
                return kind
        raise InputError("cannot infer --kind from input")

    @property
    def R(self) -> np.ndarray:
        return r_from_costs(self.matrix) if self.kind == "cost-json" else self.matrix

    @property
    def costs(self) -> np.ndarray:
        if self.kind == "demand-csv":
            raise InputError("housing commands need a cost-json or r-json matrix")
        return self.matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def _certificate_payload(R, cert, tol):
    return {"v": cert.v, "lambda": cert.lam}, verify_certificate(R, cert, tol)


def rp_check(job):
    verdict = check_cyclical_consistency(job.R, job.tol)
    if verdict.consistent:
        return 0, {"verdict": "consistent"}
    return 1, {"verdict": "violation", "cycle": _one_based(verdict.cycle)}


def rp_certify(job):
    try:
        cert = find_certificate(job.R, job.tol)
    except NotRationalizableError as exc:
        return 1, {"status": "infeasible", "cycle": _one_based(exc.cycle)}
    payload, ok = _certificate_payload(job.R, cert, job.tol)
    return 0, {"status": "certificate", "certificate": payload, "verified": ok}


def rp_indices(job):
    rep = full_report(job.R, job.args.eps, job.tol)
    report = {
        "a_star": rep.a_star,
        "a": rep.a,
        "b": rep.b,
        "g": rep.g,
        "epsilon": rep.epsilon,
        "witnesses": {
            "lambda_a_star": rep.lam_a_star,
            "lambda_a": rep.lam_a,
            "sigma_b": _one_based(rep.sigma_b),
            "lambda_g": rep.lam_g,
            "sigma_g": _one_based(rep.sigma_g),
        },
    }
    return 0, {"report": report, "assumption_a": check_assumption_a(job.R, job.tol), "verified": rep.chain_holds}


def rp_afriat_index(job):
    if job.args.b is not None:
        b = _floats(job.args.b, "--b")
    elif job.dataset is not None:
        b = job.dataset.expenditures()
    elif job.doc is not None and "b" in job.doc:
        b = np.asarray(job.doc["b"], dtype=float)
    else:
        raise InputError("afriat-index needs deflation weights: demand data, a 'b' field, or --b")
    res = afriat_efficiency_index(job.R, b, job.tol)
    return 0, {
        "e": res.e,
        "supremum": res.supremum,
        "attained": res.attained,
        "breakpoint": _one_based(res.breakpoint),
    }


def rp_utility_eval(job):
    if job.dataset is None:
        raise InputError("utility-eval needs demand-csv input")
    if job.args.bundle is None:
        raise InputError("utility-eval needs --bundle")
    x = _floats(job.args.bundle, "--bundle")
    try:
        cert = find_certificate(job.R, job.tol)
    except NotRationalizableError as exc:
        return 1, {"status": "infeasible", "cycle": _one_based(exc.cycle)}
    payload, ok = _certificate_payload(job.R, cert, job.tol)
    return 0, {"utility": afriat_utility(job.dataset, cert, x), "certificate": payload, "verified": ok}


def housing_pareto(job):
    sigma = None
    if job.args.allocation is not None:
        sigma = np.array([int(round(v)) - 1 for v in _floats(job.args.allocation, "--allocation")])
    verdict = is_pareto(job.costs, sigma, job.tol)
    if verdict.efficient:
        return 0, {"verdict": "efficient"}
    return 1, {"verdict": "blocked", "cycle": _one_based(verdict.blocking_cycle)}


def housing_prices(job):
    prices = no_trade_prices(job.costs, job.tol)
    if prices is None:
        return 1, {"prices": None}
    return 0, {"prices": prices, "verified": equilibrium_holds(job.costs, prices, job.tol)}


def housing_ttc(job):
    sigma = top_trading_cycles(job.costs, job.tol)
    return 0, {"allocation": _one_based(sigma), "verified": is_pareto(job.costs, sigma, job.tol).efficient}


def housing_welfare_gap(job):
    lam = None if job.args.weights is None else _floats(job.args.weights, "--weights")
    return 0, {"gap": welfare_gap(job.costs, lam)}


COMMANDS = {
    "rp": {
        "check": (rp_check, "test cyclical consistency"),
        "certify": (rp_certify, "find an Afriat certificate"),
        "indices": (rp_indices, "compute indices A*, A, B, G"),
        "afriat-index": (rp_afriat_index, "Afriat efficiency index"),
        "utility-eval": (rp_utility_eval, "evaluate the Afriat utility at a bundle"),
    },
    "housing": {
        "pareto": (housing_pareto, "Pareto audit of an allocation"),
        "prices": (housing_prices, "no-trade equilibrium prices"),
        "ttc": (housing_ttc, "top trading cycles allocation"),
        "welfare-gap": (housing_welfare_gap, "weighted welfare gap of the identity allocation"),
    },
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="input file, or - for stdin")
    common.add_argument("--kind", choices=KINDS, help="input format (inferred when omitted)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="sign tolerance (default %(default)g)")
    common.add_argument("--eps", type=float, default=None, help="lower weight bound for A*")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="afriatdual", description=__doc__.splitlines()[0])
    groups = p.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group).add_subparsers(dest="command", required=True)
        for name, (func, help_text) in commands.items():
            sp = gp.add_parser(name, parents=[common], help=help_text)
            sp.set_defaults(func=func)
            if name == "afriat-index":
                sp.add_argument("--b", help="comma-separated positive deflation weights")
            if name == "utility-eval":
                sp.add_argument("--bundle", help="comma-separated bundle to evaluate")
            if name == "pareto":
                sp.add_argument("--allocation", help="comma-separated 1-based houses per individual")
            if name == "welfare-gap":
                sp.add_argument("--weights", help="comma-separated welfare weights")
    return p


def run(argv=None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        job = Job(args)
        if args.eps is not None and not 0 < args.eps <= 1.0 / job.n:
            raise InputError(f"--eps must lie in (0, 1/n] with n = {job.n}")
        return args.func(job)
    except (InputError, ConvergenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None


def main(argv=None) -> int:
    code, payload = run(argv)
    if payload is not None:
        print(json.dumps(_clean(payload)))
    return code


if __name__ == "__main__":
    sys.exit(main())
