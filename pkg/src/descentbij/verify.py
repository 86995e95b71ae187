"""Exhaustive verification suites.

Each suite sweeps a small (n, k) grid, re-deriving every claim it checks from
scratch: roundtrips are executed element by element, images are compared
against independently enumerated classes, and distribution equalities are
established both by double enumeration and through the composed bijection.

Work is fanned out to a process pool over independent jobs (an (n, k) cell,
optionally restricted to permutations with a fixed first value); partial
tallies and image lists are merged associatively, so results do not depend
on the degree of parallelism.  The pool size comes from the
``DESCENTBIJ_WORKERS`` environment variable, defaulting to the processor
count; 1 disables the pool.
"""
from __future__ import annotations

import json
import multiprocessing
import os
import time
from dataclasses import dataclass, field

from .equivalence import (
    KEY_DESCENTS,
    KEY_MAJ,
    CountTable,
    descent_key,
    dt_descent_set,
    tally,
    theta_g_to_f,
)
from .errors import BadParameter
from .patterns import F, G, avoiders, special_h, special_q
from .permutation import Perm, descent_set, to_text
from .slidemap import _psi_apply, phi_map, phi_select, _phi_apply, psi_map, psi_select
from .westmap import f_map, g_map

SUITES = ("roundtrip", "descents", "image", "counts", "dt", "all")

WORKERS_ENV = "DESCENTBIJ_WORKERS"

# Test-only hook: when set, applied to forward-map outputs inside the
# roundtrip jobs so the failure-reporting path can be exercised.
_TWEAK = None


@dataclass
class VerifyReport:
    suite: str
    grid: dict
    checks: int = 0
    failures: list = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "grid": self.grid,
            "checks": self.checks,
            "failures": self.failures,
            "wall_time_s": round(self.wall_time_s, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise BadParameter(f"{WORKERS_ENV} must be an integer, got {env!r}")
    return os.cpu_count() or 1


def catalan(n: int) -> int:
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[n]


def _fail(check: str, n: int, k, inp, expected, actual) -> dict:
    return {
        "check": check,
        "n": n,
        "k": k,
        "input": to_text(inp) if isinstance(inp, tuple) else str(inp),
        "expected": to_text(expected) if isinstance(expected, tuple) else str(expected),
        "actual": to_text(actual) if isinstance(actual, tuple) else str(actual),
    }


def _maybe_tweak(p: Perm) -> Perm:
    return _TWEAK(p) if _TWEAK is not None else p


def phi_trajectory_check(p: Perm, k: int) -> tuple[Perm, str | None]:
    """Run the forward closure, checking the per-step inverse along the way.

    Returns the fixpoint and None, or (input, reason) on the first mismatch.
    """
    cur = p
    n = len(p)
    for _ in range(n * n + 1):
        sel = phi_select(cur, k)
        if sel is None:
            return cur, None
        nxt = _phi_apply(cur, k, sel)
        back_sel = psi_select(nxt, k)
        if back_sel is None:
            return cur, "step output lost its reverse selection"
        back = _psi_apply(nxt, k, back_sel)
        if back != cur:
            return cur, f"reverse step gave {to_text(back)} from {to_text(nxt)}"
        cur = nxt
    return cur, "no fixpoint within the step guard"


# --- pool plumbing ------------------------------------------------------------

def _first_values(n: int) -> list:
    return [None] if n == 0 else list(range(1, n + 1))


def _run_jobs(jobs: list, workers: int) -> list:
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(min(workers, len(jobs))) as pool:
            return pool.map(_dispatch, jobs)
    return [_dispatch(j) for j in jobs]


def _dispatch(job: tuple) -> dict:
    name = job[0]
    return _JOBS[name](*job[1:])


# --- per-slice jobs -----------------------------------------------------------

def _job_fg(n: int, k: int, first) -> dict:
    checks, fails = 0, []
    for p in avoiders(n, [G(k)], first_value=first):
        try:
            q = _maybe_tweak(f_map(p, k))
            back = g_map(q, k)
        except Exception as exc:  # recorded, not raised: harness must report
            fails.append(_fail("g(f(p)) == p", n, k, p, p, f"error: {exc}"))
            checks += 1
            continue
        checks += 1
        if back != p:
            fails.append(_fail("g(f(p)) == p", n, k, p, p, back))
    return {"checks": checks, "failures": fails}


def _job_gf(n: int, k: int, first) -> dict:
    checks, fails = 0, []
    for q in avoiders(n, [special_h(k), special_q(k)], first_value=first):
        try:
            p = _maybe_tweak(g_map(q, k))
            back = f_map(p, k)
        except Exception as exc:
            fails.append(_fail("f(g(q)) == q", n, k, q, q, f"error: {exc}"))
            checks += 1
            continue
        checks += 1
        if back != q:
            fails.append(_fail("f(g(q)) == q", n, k, q, q, back))
    return {"checks": checks, "failures": fails}


def _job_phi_round(n: int, k: int, first) -> dict:
    checks, fails = 0, []
    for p in avoiders(n, [F(k)], first_value=first):
        checks += 1
        out, reason = phi_trajectory_check(p, k)
        if reason is not None:
            fails.append(_fail("stepwise inverse along phi", n, k, p, p, reason))
            continue
        try:
            back = psi_map(_maybe_tweak(out), k)
        except Exception as exc:
            fails.append(_fail("psi(phi(p)) == p", n, k, p, p, f"error: {exc}"))
            continue
        if back != p:
            fails.append(_fail("psi(phi(p)) == p", n, k, p, p, back))
    return {"checks": checks, "failures": fails}


def _job_psi_round(n: int, k: int, first) -> dict:
    checks, fails = 0, []
    for q in avoiders(n, [special_h(k), special_q(k)], first_value=first):
        checks += 1
        try:
            back = phi_map(_maybe_tweak(psi_map(q, k)), k)
        except Exception as exc:
            fails.append(_fail("phi(psi(q)) == q", n, k, q, q, f"error: {exc}"))
            continue
        if back != q:
            fails.append(_fail("phi(psi(q)) == q", n, k, q, q, back))
    return {"checks": checks, "failures": fails}


def _job_descents(n: int, k: int, first) -> dict:
    checks, fails = 0, []
    for p in avoiders(n, [G(k)], first_value=first):
        checks += 1
        if descent_set(f_map(p, k)) != descent_set(p):
            fails.append(_fail("D(f(p)) == D(p)", n, k, p, descent_set(p),
                               descent_set(f_map(p, k))))
    for p in avoiders(n, [F(k)], first_value=first):
        checks += 1
        if descent_set(phi_map(p, k)) != descent_set(p):
            fails.append(_fail("D(phi(p)) == D(p)", n, k, p, descent_set(p),
                               descent_set(phi_map(p, k))))
    for q in avoiders(n, [special_h(k), special_q(k)], first_value=first):
        checks += 2
        if descent_set(g_map(q, k)) != descent_set(q):
            fails.append(_fail("D(g(q)) == D(q)", n, k, q, descent_set(q),
                               descent_set(g_map(q, k))))
        if descent_set(psi_map(q, k)) != descent_set(q):
            fails.append(_fail("D(psi(q)) == D(q)", n, k, q, descent_set(q),
                               descent_set(psi_map(q, k))))
    return {"checks": checks, "failures": fails}


def _job_f_image(n: int, k: int, first) -> dict:
    return {"checks": 0, "failures": [],
            "image": sorted(f_map(p, k) for p in avoiders(n, [G(k)], first_value=first))}


def _job_phi_image(n: int, k: int, first) -> dict:
    return {"checks": 0, "failures": [],
            "image": sorted(phi_map(p, k) for p in avoiders(n, [F(k)], first_value=first))}


def _job_counts_g(n: int, k: int, first) -> dict:
    perms = list(avoiders(n, [G(k)], first_value=first))
    by_desc = tally(n, [], KEY_DESCENTS, k=k, label=G(k).label, perms=perms)
    by_maj = tally(n, [], KEY_MAJ, k=k, label=G(k).label, perms=perms)
    via_theta = tally(n, [], KEY_DESCENTS, k=k, label="theta",
                      perms=(theta_g_to_f(p, k) for p in perms))
    return {"checks": 0, "failures": [], "desc": by_desc, "maj": by_maj,
            "theta_desc": via_theta}


def _job_counts_f(n: int, k: int, first) -> dict:
    perms = list(avoiders(n, [F(k)], first_value=first))
    by_desc = tally(n, [], KEY_DESCENTS, k=k, label=F(k).label, perms=perms)
    by_maj = tally(n, [], KEY_MAJ, k=k, label=F(k).label, perms=perms)
    return {"checks": 0, "failures": [], "desc": by_desc, "maj": by_maj}


_JOBS = {
    "fg": _job_fg,
    "gf": _job_gf,
    "phi_round": _job_phi_round,
    "psi_round": _job_psi_round,
    "descents": _job_descents,
    "f_image": _job_f_image,
    "phi_image": _job_phi_image,
    "counts_g": _job_counts_g,
    "counts_f": _job_counts_f,
}


# --- suite drivers ------------------------------------------------------------

def _merge_plain(report: VerifyReport, results: list) -> None:
    for res in results:
        report.checks += res["checks"]
        report.failures.extend(res["failures"])


def _suite_roundtrip(report: VerifyReport, n_max: int, k_set, workers: int) -> None:
    jobs = [(name, n, k, first)
            for k in k_set for n in range(n_max + 1)
            for name in ("fg", "gf", "phi_round", "psi_round")
            for first in _first_values(n)]
    _merge_plain(report, _run_jobs(jobs, workers))


def _suite_descents(report: VerifyReport, n_max: int, k_set, workers: int) -> None:
    jobs = [("descents", n, k, first)
            for k in k_set for n in range(n_max + 1) for first in _first_values(n)]
    _merge_plain(report, _run_jobs(jobs, workers))


def _suite_image(report: VerifyReport, n_max: int, k_set, workers: int) -> None:
    for k in k_set:
        for n in range(n_max + 1):
            target = sorted(avoiders(n, [special_h(k), special_q(k)]))
            for name in ("f_image", "phi_image"):
                jobs = [(name, n, k, first) for first in _first_values(n)]
                results = _run_jobs(jobs, workers)
                image: list = []
                for res in results:
                    image.extend(res["image"])
                image.sort()
                report.checks += 1
                if image != target:
                    extra = [to_text(p) for p in image if p not in set(target)][:3]
                    missing = [to_text(p) for p in target if p not in set(image)][:3]
                    report.failures.append(_fail(
                        f"{name} equals enumerated class", n, k,
                        f"|image|={len(image)}", f"|class|={len(target)}",
                        f"extra={extra} missing={missing}"))


def _collect_counts(name: str, n: int, k: int, workers: int) -> dict:
    jobs = [(name, n, k, first) for first in _first_values(n)]
    results = _run_jobs(jobs, workers)
    merged: dict[str, CountTable] = {}
    for res in results:
        for key in res:
            if key in ("checks", "failures"):
                continue
            if key not in merged:
                merged[key] = res[key]
            else:
                merged[key].merge(res[key])
    return merged


def _suite_counts(report: VerifyReport, n_max: int, k_set, workers: int) -> None:
    for k in k_set:
        for n in range(n_max + 1):
            gs = _collect_counts("counts_g", n, k, workers)
            fs = _collect_counts("counts_f", n, k, workers)
            for key_kind in ("desc", "maj"):
                report.checks += 1
                if gs[key_kind].entries != fs[key_kind].entries:
                    report.failures.append(_fail(
                        f"{key_kind} distribution equality", n, k,
                        f"S_{n}", json.dumps(gs[key_kind].to_json_dict()["entries"]),
                        json.dumps(fs[key_kind].to_json_dict()["entries"])))
            report.checks += 1
            if gs["theta_desc"].entries != fs["desc"].entries:
                report.failures.append(_fail(
                    "theta image tally equality", n, k,
                    f"S_{n}", json.dumps(fs["desc"].to_json_dict()["entries"]),
                    json.dumps(gs["theta_desc"].to_json_dict()["entries"])))
            if k == 3:
                report.checks += 1
                expect = catalan(n)
                if gs["desc"].total() != expect or fs["desc"].total() != expect:
                    report.failures.append(_fail(
                        "class sizes are Catalan numbers", n, k, f"S_{n}",
                        expect, (gs["desc"].total(), fs["desc"].total())))


def _suite_dt(report: VerifyReport, n_max: int, k_set, workers: int, t_set) -> None:
    for k in k_set:
        for n in range(n_max + 1):
            gs = _collect_counts("counts_g", n, k, workers)
            fs = _collect_counts("counts_f", n, k, workers)
            for t in t_set:
                key = descent_key(dt_descent_set(n, t))
                g_cnt = gs["desc"].entries.get(key, 0)
                f_cnt = fs["desc"].entries.get(key, 0)
                report.checks += 1
                if g_cnt != f_cnt:
                    report.failures.append(_fail(
                        "equal counts at the fixed descent set", n, k,
                        f"t={t}", g_cnt, f_cnt))
                if (t == 1 or t >= n) and n >= 1:
                    report.checks += 1
                    if g_cnt != 1 or f_cnt != 1:
                        report.failures.append(_fail(
                            "analytic column equals 1", n, k, f"t={t}", 1,
                            (g_cnt, f_cnt)))


def run_suite(suite: str, n_max: int, k_set=(3, 4), t_set=(1, 2, 3),
              workers: int | None = None) -> VerifyReport:
    """Run one named suite (or "all") over n <= n_max and the given k set."""
    if suite not in SUITES:
        raise BadParameter(f"unknown suite {suite!r}")
    if workers is None:
        workers = default_workers()
    k_set = tuple(sorted(set(k_set)))
    for k in k_set:
        if k < 3:
            raise BadParameter(f"k must be at least 3, got {k}")
    report = VerifyReport(suite, {
        "n": list(range(n_max + 1)),
        "k": list(k_set),
        "t": list(t_set),
        "workers": workers,
    })
    start = time.monotonic()
    if suite in ("roundtrip", "all"):
        _suite_roundtrip(report, n_max, k_set, workers)
    if suite in ("descents", "all"):
        _suite_descents(report, n_max, k_set, workers)
    if suite in ("image", "all"):
        _suite_image(report, n_max, k_set, workers)
    if suite in ("counts", "all"):
        _suite_counts(report, n_max, k_set, workers)
    if suite in ("dt", "all"):
        _suite_dt(report, n_max, k_set, workers, t_set)
    report.wall_time_s = time.monotonic() - start
    return report
