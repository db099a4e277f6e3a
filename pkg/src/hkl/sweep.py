"""
Exhaustive verification sweeps.

A sweep walks a set of intervals, runs the selected checks on every
interval / ideal pair and returns flat records::

    {"check", "u", "v", "z", "status", "residual", "witness"}

`status` is one of "pass", "fail", "unknown" or "skip".  Records are sorted
before they are returned, so the output does not depend on `jobs`.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice
from pathlib import Path

from .bbdvw import (
    BBDVWContext,
    check_bbdvw,
    check_conjecture_feq0,
    check_conjecture_reqh,
    check_Feq0relR,
    check_R_from_relR,
    inner_sums,
    n_poly_original,
    n_poly_simplified,
    q_poly_antichains,
    q_poly_subsets,
    relative_rtilde_def,
    relative_rtilde_paths,
    relative_rtilde_theta,
)
from .bruhat import build_interval, enumerate_reflection_orders, lex_order
from .camels import verify_lower_structure
from .hypercube import (
    compute_cluster,
    enumerate_hcds,
    enumerate_order_ideals,
    has_property_E,
    is_hypercube_decomposition,
    is_strong_cluster,
    numerical_criterion,
    principal_ideal,
)
from .klr import DEFAULT_CACHE, kl_identity_residual, kl_polynomial, r_polynomial, rtilde_polynomial
from .permutation import Permutation, all_permutations, bruhat_leq, identity
from .poly import rtilde_to_r

__all__ = [
    "CHECKS",
    "SweepConfig",
    "GuardError",
    "intervals_for",
    "check_interval",
    "run_sweep",
    "write_report",
    "summarize",
    "cache_path",
]

CHECKS = ("hd", "bbdvw", "lemmas", "thm-relR", "section4", "conj-feq0", "conj-reqh", "dyer")
MAX_ALL_N = 5
MAX_LOWER_N = 6
DYER_SAMPLE = 3
# beyond this interval size the number of order ideals explodes; use principal ones
LEMMA_ALL_IDEALS_MAX = 24


class GuardError(RuntimeError):
    """The requested sweep is larger than the default desk-scale limits."""


@dataclass
class SweepConfig:
    n: int
    scope: str = "lower"  # all | lower | explicit
    checks: tuple[str, ...] = CHECKS
    jobs: int = 1
    limit: int | None = None
    pairs: tuple[tuple[str, str], ...] = ()
    allow_large: bool = False
    e_method: str = "auto"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if self.scope not in ("all", "lower", "explicit"):
            raise ValueError(f"unknown scope {self.scope!r}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


def intervals_for(config: SweepConfig) -> list[tuple[Permutation, Permutation]]:
    n = config.n
    if not config.allow_large:
        if config.scope == "all" and n > MAX_ALL_N:
            raise GuardError(f"all-interval sweeps are limited to n <= {MAX_ALL_N}")
        if config.scope == "lower" and n > MAX_LOWER_N:
            raise GuardError(f"lower-interval sweeps are limited to n <= {MAX_LOWER_N}")
    if config.scope == "explicit":
        pairs = [(Permutation.parse(a), Permutation.parse(b)) for a, b in config.pairs]
        for u, v in pairs:
            if u.n != n or v.n != n:
                raise ValueError(f"pair {u},{v} is not in S_{n}")
    elif config.scope == "lower":
        e = identity(n)
        pairs = [(e, v) for v in all_permutations(n)]
    else:
        perms = all_permutations(n)
        pairs = [(u, v) for u in perms for v in perms if bruhat_leq(u, v)]
    if config.limit is not None:
        pairs = pairs[:config.limit]
    return pairs


def _rec(check, u, v, z, status, residual=None, witness=None) -> dict:
    return {
        "check": check,
        "u": str(u),
        "v": str(v),
        "z": None if z is None else str(z),
        "status": status,
        "residual": None if residual is None else residual.to_json(),
        "witness": witness,
    }


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _dyer_orders(n: int):
    if n < 2:
        return [lex_order(n)]
    orders = list(islice(enumerate_reflection_orders(n), 64))
    picks = [lex_order(n), *orders[:DYER_SAMPLE]]
    rev = type(picks[0])(tuple(reversed(picks[0].sequence)), n)
    picks.append(rev)
    seen, out = set(), []
    for o in picks:
        if o not in seen:
            seen.add(o)
            out.append(o)
    return out


def _dyer_records(u, v):
    length = v.length - u.length
    r = r_polynomial(u, v)
    out = []
    for k, order in enumerate(_dyer_orders(u.n)):
        rt = rtilde_polynomial(u, v, order=order)
        diff = rtilde_to_r(rt, length) - r
        out.append(_rec("dyer", u, v, None, _status(diff.is_zero()), diff, {"order": k}))
    p = kl_polynomial(u, v)
    res = kl_identity_residual(u, v, p)
    out.append(_rec("kl-identity", u, v, None, _status(res.is_zero()), res, {"P": str(p)}))
    return out


def _lemma_records(u, v, interval):
    out = []
    orders = _dyer_orders(u.n)
    if len(interval) <= LEMMA_ALL_IDEALS_MAX:
        ideals = enumerate_order_ideals(interval)
    else:
        ideals = [principal_ideal(interval, z) for z in interval.elements]
    for ideal in ideals:
        members = ideal.members
        gens = [str(g) for g in ideal.maximal_elements()]
        z = ideal.top
        wit = {"ideal": gens}
        res = check_R_from_relR(u, v, members)
        out.append(_rec("lemma-R-from-relR", u, v, z, _status(res.is_zero()), res, wit))
        whole = len(members) == len(interval)
        if u != v:
            res = check_Feq0relR(u, v, members)
            if whole:
                # the sum collapses to R~_{u,v} when nothing lies outside I
                res = res - rtilde_polynomial(u, v)
            out.append(_rec("lemma-Feq0relR", u, v, z, _status(res.is_zero()), res,
                            {**wit, "whole_interval": whole}))
        d = relative_rtilde_def(u, v, members)
        for k, order in enumerate(orders):
            diff = relative_rtilde_paths(u, v, members, order) - d
            out.append(_rec("relR-paths", u, v, z, _status(diff.is_zero()), diff, {**wit, "order": k}))
    return out


def check_interval(u: Permutation, v: Permutation, checks=CHECKS, e_method="auto",
                   allow_large=False) -> list[dict]:
    """All records for one interval."""
    checks = set(checks)
    interval = build_interval(u, v)
    lower = u.is_identity()
    out: list[dict] = []
    if "dyer" in checks:
        out.extend(_dyer_records(u, v))
    if "lemmas" in checks:
        out.extend(_lemma_records(u, v, interval))
    per_hcd = checks & {"hd", "bbdvw", "thm-relR", "section4", "conj-feq0", "conj-reqh"}
    if not per_hcd:
        return out
    for ideal in enumerate_hcds(interval):
        z = ideal.top
        clusters = {x: compute_cluster(ideal, x) for x in sorted(ideal.members)}
        cl_u = clusters[u]
        strong_u, strong_wit = is_strong_cluster(cl_u)
        nc_u, nc_wit = numerical_criterion(cl_u)
        e_u = has_property_E(ideal, u, e_method, allow_large)
        ctx = BBDVWContext(ideal, cl_u, DEFAULT_CACHE)

        if "hd" in checks:
            rep = is_hypercube_decomposition(ideal)
            e_all = [has_property_E(ideal, x, e_method, allow_large) for x in sorted(ideal.members)]
            e_vals = [r.value for r in e_all]
            e_label = "false" if False in e_vals else ("unknown" if None in e_vals else "true")
            details = {
                "interval": [str(u), str(v)], "z": str(z),
                "hd1": rep.hd1, "hd2": rep.hd2, "hd3": rep.hd3,
                "strong_at_u": strong_u, "nc_at_u": nc_u, "property_E": e_label,
                "witnesses": rep.witnesses + [w for w in (strong_wit, nc_wit) if w],
            }
            status = _status(rep.ok)
            if lower and status == "pass":
                if not (strong_u and nc_u) or e_label == "false":
                    status = "fail"
                elif e_label == "unknown":
                    status = "unknown"
            out.append(_rec("hd", u, v, z, status, None, details))

        if "bbdvw" in checks:
            res = check_bbdvw(ctx)
            forms_ok = (n_poly_original(ctx) == n_poly_simplified(ctx)
                        and q_poly_subsets(ctx) == q_poly_antichains(ctx) and res.consistent)
            wit = {"forms_agree": forms_ok, "strong": strong_u, "nc": nc_u, "E": e_u.label}
            out.append(_rec("bbdvw", u, v, z, _status(res.ok and forms_ok), res.direct, wit))
            if strong_u and e_u.value:
                for y in ctx.outside():
                    tilde, plain = inner_sums(ctx, y)
                    out.append(_rec("inner-sum-Feq0", u, v, z, _status(tilde.is_zero()), tilde, {"y": str(y)}))
                    if nc_u:
                        out.append(_rec("inner-sum-Funtilde", u, v, z, _status(plain.is_zero()), plain,
                                        {"y": str(y)}))

        if "thm-relR" in checks:
            for x, cl in clusters.items():
                strong_x, _ = is_strong_cluster(cl)
                e_x = has_property_E(ideal, x, e_method, allow_large)
                if not (strong_x and e_x.value):
                    continue
                sub = [m for m in ideal.members if bruhat_leq(x, m)]
                diff = relative_rtilde_theta(cl, v) - relative_rtilde_def(x, v, sub)
                out.append(_rec("thm-relR", u, v, z, _status(diff.is_zero()), diff, {"x": str(x)}))

        if "section4" in checks and lower:
            rep4 = verify_lower_structure(v, z)
            out.append(_rec("section4", u, v, z, _status(rep4.ok), None,
                            {"blocks": str(rep4.blocks), "antichains": rep4.antichains_checked,
                             "failures": rep4.failures}))

        if "conj-feq0" in checks and z != v and nc_u:
            res = check_conjecture_feq0(ctx)
            out.append(_rec("conj-feq0", u, v, z, _status(res.is_zero()), res))

        if "conj-reqh" in checks:
            if all(numerical_criterion(cl)[0] for cl in clusters.values()):
                res = check_conjecture_reqh(ctx, clusters)
                out.append(_rec("conj-reqh", u, v, z, _status(res.is_zero()), res))
    return out


def _record_key(rec: dict):
    u = Permutation.parse(rec["u"])
    v = Permutation.parse(rec["v"])
    z = Permutation.parse(rec["z"]).sort_key() if rec["z"] else ()
    return (u.sort_key(), v.sort_key(), z, rec["check"], json.dumps(rec, sort_keys=True))


def _task(args):
    u, v, checks, e_method, allow_large = args
    return check_interval(Permutation.parse(u), Permutation.parse(v), checks, e_method, allow_large)


def _worker_init(cache_file):
    if cache_file:
        DEFAULT_CACHE.load(cache_file)


def cache_path(n: int) -> Path | None:
    root = os.environ.get("HKL_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"polys-n{n}.jsonl"


def run_sweep(config: SweepConfig) -> list[dict]:
    pairs = intervals_for(config)
    tasks = [(str(u), str(v), tuple(config.checks), config.e_method, config.allow_large) for u, v in pairs]
    cfile = cache_path(config.n)
    if cfile is not None:
        DEFAULT_CACHE.load(cfile)
    records: list[dict] = []
    if config.jobs == 1:
        for t in tasks:
            records.extend(_task(t))
    else:
        with ProcessPoolExecutor(config.jobs, initializer=_worker_init,
                                 initargs=(str(cfile) if cfile and cfile.exists() else None,)) as pool:
            for chunk in pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * config.jobs))):
                records.extend(chunk)
    if cfile is not None and config.jobs == 1:
        cfile.parent.mkdir(parents=True, exist_ok=True)
        DEFAULT_CACHE.dump(cfile)
    records.sort(key=_record_key)
    return records


def summarize(records: list[dict]) -> dict:
    summary: dict = {}
    for rec in records:
        per = summary.setdefault(rec["check"], {"pass": 0, "fail": 0, "unknown": 0, "skip": 0})
        per[rec["status"]] += 1
    return summary


CSV_COLUMNS = ("check", "u", "v", "z", "status", "residual", "witness")


def write_report(records: list[dict], path, fmt: str = "json", config: SweepConfig | None = None) -> None:
    if fmt == "json":
        doc = {
            "config": None if config is None else {k: (list(v) if isinstance(v, tuple) else v)
                                                   for k, v in asdict(config).items()},
            "summary": summarize(records),
            "records": records,
        }
        text = json.dumps(doc, indent=1)
        if path in (None, "-"):
            print(text)
        else:
            Path(path).write_text(text + "\n")
    elif fmt == "csv":
        fh = open(path, "w", newline="") if path not in (None, "-") else None
        try:
            import sys
            writer = csv.writer(fh or sys.stdout)
            writer.writerow(CSV_COLUMNS)
            for rec in records:
                writer.writerow([
                    rec["check"], rec["u"], rec["v"], rec["z"] or "", rec["status"],
                    "" if rec["residual"] is None else json.dumps(rec["residual"]),
                    "" if rec["witness"] is None else json.dumps(rec["witness"], sort_keys=True),
                ])
        finally:
            if fh:
                fh.close()
    else:
        raise ValueError(f"unknown format {fmt!r}")
