"""Random hypersurface slicing tracked upstairs.

Forms h_j in U_0..U_s over k are sampled at random and pulled back to
g_j = h_j(f_0, ..., f_s).  A slice is kept when, for every g in G minus 1,
it lowers the dimension of Q_g intersected with the slices so far.  After
n - r slices the complete intersection is certified once with the
Jacobian criterion; failure restarts the loop with fresh randomness.

Randomness comes from ``random.Random(f"{seed}:{restart}")`` (Mersenne
Twister seeded by a string), so runs are reproducible across platforms.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .ideals import Budget, HomIdeal, is_projectively_empty, jacobian_smooth_certificate, projective_dimension, radical_contains
from .poly import MultiPoly, PolyRing, compose, monomial_basis

log = logging.getLogger(__name__)


@dataclass
class SlicingBudget:
    samples_per_slice: int = 16
    form_degree_start: int = 1
    form_degree_max: int = 4
    restarts: int = 8
    retries_per_degree: int = 2


@dataclass
class SlicingState:
    hs: list = field(default_factory=list)
    gs: list = field(default_factory=list)
    es: list = field(default_factory=list)
    bad_dims: dict = field(default_factory=dict)    # g -> list of dims after 0, 1, ... slices
    seed: int = 0
    restart: int = 0
    attempts: list = field(default_factory=list)
    smoothness: object = None
    per_step: list = field(default_factory=list)


def sample_form(s: int, e: int, F, rng: random.Random, window: int = 1) -> MultiPoly:
    """Random nonzero degree-e form in U_0..U_s over k.

    Over a finite field the coefficients are uniform on F_p; over Q they are
    integers uniform in [-window, window].
    """
    if e < 1:
        raise ValueError("form degree must be positive")
    ring = PolyRing(s + 1, F, "U")
    monos = monomial_basis(s + 1, e)
    while True:
        terms = {}
        for m in monos:
            if F.is_finite:
                c = F.from_int(rng.randrange(F.order))
            else:
                c = F.from_int(rng.randint(-window, window))
            if c != F.zero:
                terms[m] = c
        if terms:
            return MultiPoly(ring, terms)


def pull_back(h: MultiPoly, fs: list[MultiPoly], ring: PolyRing) -> MultiPoly:
    return compose(h, fs, ring)


def _dims(bad: dict, gs: list, budget: Budget | None) -> dict:
    return {g: projective_dimension(HomIdeal(Q.ring, Q.gens + gs), budget=budget) for g, Q in bad.items()}


def singular_locus_inside_bad(gs: list, bad: dict, budget: Budget | None = None) -> bool:
    """Upstairs stand-in for per-step smoothness: Sing V(g_1..g_j) lies in Q.

    Checks that every product of one generator from each Q_g lies in the
    radical of (g_1..g_j, Jacobian minors), i.e. V(...) is inside the union
    of the Q_g.
    """
    from itertools import product

    from .ideals import jacobian_minors

    ring = gs[0].ring
    sing = gs + jacobian_minors(gs, ring)
    if not bad:
        return is_projectively_empty(sing, budget)
    for combo in product(*[Q.gens for Q in bad.values()]):
        p = ring.one()
        for q in combo:
            p = p * q
        if not radical_contains(sing, p, budget):
            return False
    return True


def slicing_loop(fs: list[MultiPoly], bad: dict, n: int, r: int, F, seed: int = 0,
                 budget: SlicingBudget | None = None, gb_budget: Budget | None = None,
                 per_step_checks: bool = False) -> SlicingState:
    """Find n - r forms whose pullbacks cut Y as in the construction.

    ``bad`` maps each g in G minus 1 to its minors ideal over k'; ``F`` is k.
    """
    budget = budget or SlicingBudget()
    ring = fs[0].ring
    s = len(fs) - 1
    count = n - r
    base_dims = _dims(bad, [], gb_budget)
    attempts = []
    e_start = budget.form_degree_start
    failures_at_degree = 0
    for restart in range(budget.restarts):
        rng = random.Random(f"{seed}:{restart}")
        window = 2**restart
        state = SlicingState(seed=seed, restart=restart, bad_dims={g: [d] for g, d in base_dims.items()})
        cur = dict(base_dims)
        ok = True
        for j in range(count):
            e = e_start
            accepted = False
            while not accepted:
                for sample in range(budget.samples_per_slice):
                    h = sample_form(s, e, F, rng, window)
                    g = pull_back(h, fs, ring)
                    if g.is_zero():
                        attempts.append({"restart": restart, "slice": j + 1, "e": e, "sample": sample, "result": "zero-pullback"})
                        continue
                    new = _dims(bad, state.gs + [g], gb_budget)
                    if all(new[x] <= cur[x] - 1 or new[x] == -1 for x in new):
                        accepted = True
                        state.hs.append(h)
                        state.gs.append(g)
                        state.es.append(e)
                        for x in new:
                            state.bad_dims[x].append(new[x])
                        cur = new
                        attempts.append({"restart": restart, "slice": j + 1, "e": e, "sample": sample, "result": "accepted"})
                        break
                    attempts.append({"restart": restart, "slice": j + 1, "e": e, "sample": sample, "result": "no-drop"})
                if accepted:
                    break
                if not F.is_finite or e >= budget.form_degree_max:
                    break
                e += 1
            if not accepted:
                ok = False
                break
            if per_step_checks:
                state.per_step.append(singular_locus_inside_bad(state.gs, bad, gb_budget))
        if ok:
            cert = jacobian_smooth_certificate(state.gs, gb_budget) if state.gs else None
            state.smoothness = cert
            if cert is None or cert.ok:
                state.attempts = attempts
                log.info("slicing accepted on restart %d with degrees %s", restart, state.es)
                return state
            attempts.append({"restart": restart, "result": "not-smooth", "dim": cert.dimension, "smooth": cert.smooth})
        failures_at_degree += 1
        if F.is_finite and failures_at_degree >= budget.retries_per_degree and e_start < budget.form_degree_max:
            e_start += 1
            failures_at_degree = 0
    err = BudgetExceeded(f"slicing failed after {budget.restarts} restarts", kind="budget-exhausted", stage="bertini")
    err.attempts = attempts
    raise err
