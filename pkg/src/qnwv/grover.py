"""Grover search over the verifier's input space.

The driver prepares the input register (uniform, or a biased product state
for amplified search), alternates oracle and diffuser, reads exact
probabilities off the state vector, samples a histogram and re-checks every
sampled candidate with the classical verifier before reporting it.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

import numpy as np

from .circuit import MCZ, RY, Circuit, H, StateVector, X, Z, marginal, measure_all, run
from .classical import brute_force, evaluate
from .errors import ConfigError
from .netmodel import Network, Property, parse_bits
from .oracle import DIAGONAL, CompiledOracle, add_exclusion, compile_oracle

log = logging.getLogger(__name__)

UNIFORM, BIASED = "uniform", "biased"


@dataclass(frozen=True)
class InitSpec:
    kind: str = UNIFORM
    p: Optional[float] = None  # probability that each bit measures 0

    def __post_init__(self):
        if self.kind == BIASED:
            if self.p is None or not 0 < self.p < 1:
                raise ConfigError(f"biased init needs 0 < p < 1, got {self.p}")
        elif self.kind != UNIFORM:
            raise ConfigError(f"unknown init kind {self.kind!r}")

    def angle(self) -> float:
        p = 0.5 if self.kind == UNIFORM else self.p
        return 2 * math.acos(math.sqrt(p))


def Uniform() -> InitSpec:
    return InitSpec(UNIFORM)


def Biased(p: float) -> InitSpec:
    return InitSpec(BIASED, p)


def prepare_init(n: int, init: InitSpec = InitSpec(), width: Optional[int] = None):
    """Return ``(state, A)`` where ``A`` prepares ``state`` from ``|0...0>``.

    Only the first ``n`` qubits are touched; ``width`` leaves room for
    oracle ancillas.
    """
    if n < 1:
        raise ConfigError("need at least one input qubit")
    width = n if width is None else width
    # p = 1/2 uses H as well: same state, and the sampler sees identical floats
    if init.kind == UNIFORM or init.p == 0.5:
        A = Circuit(width, [H(q) for q in range(n)])
    else:
        A = Circuit(width, [RY(q, init.angle()) for q in range(n)])
    return run(A, StateVector.zero(width), inplace=True), A


def diffuser(A: Circuit, n: int) -> Circuit:
    """Reflection ``2|psi><psi| - I`` about the state ``A`` prepares on the first n qubits."""
    inputs = list(range(n))
    c = A.inverse()
    c.extend(X(q) for q in inputs)
    c.append(MCZ(inputs[:-1], inputs[-1]))
    c.extend(X(q) for q in inputs)
    # the X-MCZ-X block is I - 2|0><0|; (XZ)^2 = -I flips it to 2|0><0| - I
    c.extend([X(0), Z(0), X(0), Z(0)])
    c.extend(A.gates)
    return c


def optimal_iterates(n: int, k: int) -> int:
    N = 1 << n
    if not 1 <= k <= N:
        raise ConfigError(f"solution count {k} outside 1..{N}")
    if k == N:
        return 0
    return max(1, math.floor(math.pi / 4 * math.sqrt(N / k)))


def success_probability(n: int, k: int, G: int) -> float:
    """Probability of measuring a marked input after G uniform-start iterates."""
    N = 1 << n
    if not 1 <= k <= N:
        raise ConfigError(f"solution count {k} outside 1..{N}")
    theta = math.asin(math.sqrt(k / N))
    return math.sin((2 * G + 1) * theta) ** 2


@dataclass(frozen=True)
class GroverPlan:
    net: Network
    prop: Property
    oracle: CompiledOracle
    iterates: Optional[int] = None
    k_hint: Optional[int] = None
    init: InitSpec = field(default_factory=InitSpec)
    shots: int = 10000
    seed: int = 0

    @property
    def n(self) -> int:
        return self.oracle.n

    def resolved_iterates(self) -> int:
        if self.iterates is not None:
            if self.iterates < 0:
                raise ConfigError("iterate count must be nonnegative")
            return self.iterates
        if self.k_hint is None:
            raise ConfigError("plan needs either iterates or k_hint (or use bbht_search)")
        return optimal_iterates(self.n, self.k_hint)


def make_plan(
    net: Network,
    prop: Property,
    *,
    backend: str = DIAGONAL,
    exclusions=(),
    midcircuit_reset: bool = True,
    **kwargs,
) -> GroverPlan:
    oracle = compile_oracle(net, prop, backend, exclusions, midcircuit_reset)
    return GroverPlan(net, prop, oracle, **kwargs)


@dataclass(frozen=True)
class SearchResult:
    n: int
    iterates: int
    histogram: dict
    confirmed: tuple  # bit strings, ascending
    success_fraction: float
    exact_success: float
    warnings: tuple = ()

    @property
    def confirmed_ints(self) -> list[int]:
        return [parse_bits(s) for s in self.confirmed]


def _target_mask(plan: GroverPlan) -> np.ndarray:
    o = plan.oracle
    if o.backend == DIAGONAL:
        return o.phases < 0
    mask = np.zeros(1 << o.n, dtype=bool)
    for x in brute_force(plan.net, plan.prop):
        mask[x] = x not in o.excluded
    return mask


def amplify(plan: GroverPlan, G: int) -> StateVector:
    """State after preparing the init and applying G oracle+diffuser rounds."""
    state, A = prepare_init(plan.n, plan.init, plan.oracle.width)
    D = diffuser(A, plan.n)
    for _ in range(G):
        plan.oracle.apply(state)
        run(D, state, inplace=True)
    return state


def search(plan: GroverPlan) -> SearchResult:
    if plan.oracle.n != plan.net.n:
        raise ConfigError(f"oracle has {plan.oracle.n} inputs, problem has {plan.net.n}")
    G = plan.resolved_iterates()
    warnings = []
    if plan.k_hint is not None and plan.init.kind == UNIFORM:
        p = success_probability(plan.n, plan.k_hint, G)
        if p < 0.9:
            warnings.append(
                f"{G} iterate(s) over/under-rotate for k={plan.k_hint}, N={1 << plan.n}: "
                f"analytic success {p:.4f}"
            )

    state = amplify(plan, G)
    inputs = plan.oracle.input_register
    probs = marginal(state, inputs)
    exact = float(probs[_target_mask(plan)].sum())
    hist = measure_all(state, plan.shots, plan.seed, register=inputs)

    confirmed = []
    for s in sorted(hist, key=parse_bits):
        x = parse_bits(s)
        if x not in plan.oracle.excluded and evaluate(plan.net, plan.prop, x):
            confirmed.append(s)
    hits = sum(hist[s] for s in confirmed)
    for w in warnings:
        log.warning(w)
    return SearchResult(
        n=plan.n,
        iterates=G,
        histogram=dict(sorted(hist.items())),
        confirmed=tuple(confirmed),
        success_fraction=hits / plan.shots,
        exact_success=exact,
        warnings=tuple(warnings),
    )


def bbht_search(plan: GroverPlan, growth: float = 1.2, tail: int = 3) -> SearchResult:
    """Search without knowing the solution count.

    Iterate counts are drawn uniformly from ``[0, m)`` with ``m`` growing by
    ``growth`` per step up to ``ceil(sqrt(2**n))``; after ``tail`` steps at
    that cap the schedule is exhausted and the last (empty) result returned.
    """
    rng = np.random.default_rng(plan.seed)
    cap = math.ceil(math.sqrt(1 << plan.n))
    m, at_cap = 1, 0
    while True:
        G = int(rng.integers(0, m))
        result = search(replace(plan, iterates=G, k_hint=None, seed=int(rng.integers(2**32))))
        if result.confirmed:
            return result
        if m >= cap:
            at_cap += 1
            if at_cap >= tail:
                return result
        m = min(math.ceil(growth * m), cap)


def iter_rounds(
    net: Network,
    prop: Property,
    budget: int,
    *,
    shots: int = 1000,
    seed: int = 0,
    init: InitSpec = InitSpec(),
    backend: str = DIAGONAL,
    midcircuit_reset: bool = True,
) -> Iterator[SearchResult]:
    """Yield one BBHT search per round, excluding solutions confirmed so far.

    Stops after a round that confirms nothing new or after ``budget`` rounds.
    """
    if budget <= 0:
        raise ConfigError("budget must be positive")
    oracle = compile_oracle(net, prop, backend, (), midcircuit_reset)
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        plan = GroverPlan(net, prop, oracle, init=init, shots=shots, seed=int(rng.integers(2**32)))
        result = bbht_search(plan)
        yield result
        new = set(result.confirmed_ints) - oracle.excluded
        if not new:
            return
        oracle = add_exclusion(oracle, new)


def find_all(net: Network, prop: Property, budget: int, **kwargs) -> list[int]:
    """All marked instances discoverable within ``budget`` exclusion rounds, ascending."""
    found: set[int] = set()
    for result in iter_rounds(net, prop, budget, **kwargs):
        found.update(result.confirmed_ints)
    return sorted(found)
