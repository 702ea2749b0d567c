"""Self-dual GRS codes over GF(r^2) from unions of cosets of a subgroup.

H = <ω^{(q-1)/n'}> has order n'.  It sits inside a larger cyclic group G, and
the evaluation set is a union of t cosets β_b H of H in G:

* theorem 1: n1 = gcd(n', r+1), G = <ω^{(r+1)/n1}>, up to (r-1)/n2 cosets;
* theorem 2: n1 = gcd(n', r-1), G = <ω^{(r-1)/n1}>, up to (r+1)/n2 cosets;

with n2 = n'/n1.  Coset representatives are β_b = ω^{μ_b · step} where step is
the exponent generating G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CaseConditionViolated, InvalidParams, NotASquare
from .field import FieldContext, FieldElement, divisors, field_of_order, prime_power
from .grs import EvaluationSet, GrsCode
from .selfdual import lemma2_code, lemma3_code

CASES = {1: ("i", "ii", "iii"), 2: ("i", "ii")}


def split_square(q: int) -> int:
    """r with q = r^2 and r a power of an odd prime."""
    r = math.isqrt(q)
    if r * r != q:
        raise NotASquare(f"q = {q} is not a perfect square")
    pe = prime_power(r)
    if pe is None or pe[0] == 2:
        raise NotASquare(f"q = {q} is not the square of an odd prime power")
    return r


@dataclass(frozen=True)
class ConstructionParams:
    r: int
    n_prime: int
    t: int
    theorem: int
    case: str

    def __post_init__(self):
        if self.theorem not in CASES:
            raise InvalidParams(f"theorem must be 1 or 2, got {self.theorem}")
        if self.case not in CASES[self.theorem]:
            raise InvalidParams(f"theorem {self.theorem} has cases {CASES[self.theorem]}, got {self.case!r}")
        pe = prime_power(self.r)
        if pe is None or pe[0] == 2:
            raise InvalidParams(f"r = {self.r} is not a power of an odd prime")
        if self.n_prime < 1 or (self.q - 1) % self.n_prime:
            raise InvalidParams(f"n' = {self.n_prime} does not divide q-1 = {self.q - 1}")
        if not 1 <= self.t <= self.max_t:
            raise InvalidParams(f"t = {self.t} outside [1, {self.max_t}]")

    @classmethod
    def for_field(cls, q: int, theorem: int, case: str, n_prime: int, t: int) -> "ConstructionParams":
        return cls(split_square(q), n_prime, t, theorem, case)

    @property
    def q(self) -> int:
        return self.r * self.r

    @property
    def n1(self) -> int:
        other = self.r + 1 if self.theorem == 1 else self.r - 1
        return math.gcd(self.n_prime, other)

    @property
    def n2(self) -> int:
        return self.n_prime // self.n1

    @property
    def n(self) -> int:
        return self.t * self.n_prime

    @property
    def cosets_in_g(self) -> int:
        """Index of H in G, i.e. the number of available cosets."""
        if self.theorem == 1:
            return (self.r - 1) // self.n2
        return (self.r + 1) // self.n2

    @property
    def max_t(self) -> int:
        return self.cosets_in_g

    @property
    def step(self) -> int:
        """Exponent e with G = <ω^e>."""
        if self.theorem == 1:
            return (self.r + 1) // self.n1
        return (self.r - 1) // self.n1

    @property
    def length(self) -> int:
        """Length of the self-dual code this case produces."""
        if self.theorem == 1:
            return {"i": self.n, "ii": self.n + 1, "iii": self.n + 2}[self.case]
        return {"i": self.n, "ii": self.n + 2}[self.case]

    def _odd_branch(self) -> bool:
        return self.theorem == 2 and self.case == "ii" and self.n2 % 2 == 1

    def case_holds(self) -> bool:
        r, n, n1, n2, t = self.r, self.n, self.n1, self.n2, self.t
        if self.theorem == 1:
            if self.case == "i":
                return n % 2 == 0 and ((r + 1) // n1) % 2 == 0
            if self.case == "ii":
                return n % 2 == 1
            return n % 2 == 0
        if self.case == "i":
            return ((r - 1) // n1) % 2 == 0 and (t * n2) % 2 == 0
        if n2 % 2 == 0:
            return ((r + 1) // 2 * (t - 1)) % 2 == 0
        return t % 2 == 0 and t <= (r + 1) // n2 - 1

    def to_json(self) -> dict:
        return {"q": self.q, "r": self.r, "theorem": self.theorem, "case": self.case,
                "n_prime": self.n_prime, "t": self.t, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class CosetSelection:
    mu: tuple[int, ...]
    step: int
    reps: tuple[FieldElement, ...]


def select_cosets(params: ConstructionParams, field: FieldContext | None = None) -> CosetSelection:
    """Representatives β_b = ω^{μ_b·step} with μ = (0, 1, ..., t-1).

    In the odd-n2 branch of theorem 2 case ii the exponent (r+1)/2 + Σμ must be
    even; when it is not, the last index is moved from t-1 to t.
    """
    f = field or field_of_order(params.q)
    mu = list(range(params.t))
    if params._odd_branch():
        if params.t > (params.r + 1) // params.n2 - 1:
            raise InvalidParams(
                f"t = {params.t} leaves no spare coset (need t <= {(params.r + 1) // params.n2 - 1})"
            )
        if ((params.r + 1) // 2 + sum(mu)) % 2:
            mu[-1] = params.t
    reps = tuple(f.power_of_omega(m * params.step) for m in mu)
    return CosetSelection(tuple(mu), params.step, reps)


def eval_set(params: ConstructionParams, include_zero: bool = False,
             field: FieldContext | None = None) -> EvaluationSet:
    """Union of the selected cosets β_b H, optionally followed by 0."""
    f = field or field_of_order(params.q)
    h = f.subgroup(params.n_prime)
    sel = select_cosets(params, f)
    pts = [beta * x for beta in sel.reps for x in h]
    if include_zero:
        pts.append(f.zero)
    return EvaluationSet(f, tuple(pts))


def thm1_eval_set(params: ConstructionParams, include_zero: bool = False) -> EvaluationSet:
    if params.theorem != 1:
        raise InvalidParams("parameters are for theorem 2")
    return eval_set(params, include_zero)


def thm2_eval_set(params: ConstructionParams, include_zero: bool = False) -> EvaluationSet:
    if params.theorem != 2:
        raise InvalidParams("parameters are for theorem 1")
    return eval_set(params, include_zero)


def construct(params: ConstructionParams) -> GrsCode:
    """Certified self-dual MDS code for a theorem/case parameter tuple."""
    if not params.case_holds():
        raise CaseConditionViolated(
            f"theorem {params.theorem} case {params.case} does not apply to "
            f"r={params.r}, n'={params.n_prime}, t={params.t}"
        )
    f = field_of_order(params.q)
    sel = select_cosets(params, f)
    prov = {"source": f"theorem{params.theorem}", **params.to_json(), "mu": list(sel.mu)}
    if params.case == "i":
        return lemma2_code(eval_set(params, False, f), provenance=prov)
    a0 = eval_set(params, True, f)
    if len(a0) % 2 == 0:
        # theorem 1 case ii: |A0| = n + 1 is even
        return lemma2_code(a0, provenance=prov)
    return lemma3_code(a0, provenance=prov)


def thm1_construct(params: ConstructionParams) -> GrsCode:
    if params.theorem != 1:
        raise InvalidParams("parameters are for theorem 2")
    return construct(params)


def thm2_construct(params: ConstructionParams) -> GrsCode:
    if params.theorem != 2:
        raise InvalidParams("parameters are for theorem 1")
    return construct(params)


@dataclass(frozen=True)
class LengthWitness:
    N: int
    theorem: int
    case: str
    n_prime: int
    t: int
    r: int

    @property
    def params(self) -> ConstructionParams:
        return ConstructionParams(self.r, self.n_prime, self.t, self.theorem, self.case)

    def to_json(self) -> dict:
        return {"N": self.N, "theorem": self.theorem, "case": self.case,
                "n_prime": self.n_prime, "t": self.t, "r": self.r}


def enumerate_lengths(q: int, max_n: int) -> list[LengthWitness]:
    """Every even length N in [4, max_n] reached by some theorem case, one witness each.

    The witness for (N, theorem, case) is the first hit scanning n' and then t
    in increasing order.  Output is sorted by (N, theorem, case).
    """
    r = split_square(q)
    found: dict[tuple[int, int, str], LengthWitness] = {}
    cap = min(max_n, q + 1)
    for n_prime in divisors(q - 1):
        for theorem, cases in CASES.items():
            probe = ConstructionParams(r, n_prime, 1, theorem, "i")
            for t in range(1, probe.max_t + 1):
                for case in cases:
                    p = ConstructionParams(r, n_prime, t, theorem, case)
                    N = p.length
                    if N % 2 or N < 4 or N > cap or not p.case_holds():
                        continue
                    found.setdefault((N, theorem, case), LengthWitness(N, theorem, case, n_prime, t, r))
    return [found[key] for key in sorted(found)]
