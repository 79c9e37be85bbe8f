"""Compare sampled generic series with the conjectured closed forms.

Each check returns a ConjectureVerdict. ``proven_regime`` only says whether
the parameters fall where the closed form is a theorem; it never depends on
what was observed. A mismatch outside that regime is evidence, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .fp_linalg import PrimeField
from .generic import DEFAULT_SAMPLES, generic_estimate, sample_presentation
from .hilbert import lie_series
from .koszul import koszul_product
from .presentation import Flavor
from .series import (AlgebraType, PowerSeries, bracket, froberg_series, log_op,
                     quadratic_inverse)


@dataclass(frozen=True)
class ConjectureVerdict:
    id: str
    params: dict
    expected: PowerSeries
    observed: PowerSeries
    match: tuple[bool, ...]
    proven_regime: bool
    details: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        if "agrees" in self.details:
            return self.details["agrees"]
        return all(self.match)

    @property
    def violation(self) -> bool:
        """A disagreement where the closed form is a theorem."""
        return self.proven_regime and not self.agrees

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "expected": self.expected.as_strings(),
            "observed": self.observed.as_strings(),
            "match": list(self.match),
            "agrees": self.agrees,
            "proven_regime": self.proven_regime,
            **({"details": self.details} if self.details else {}),
        }


def _match(a: PowerSeries, b: PowerSeries) -> tuple[bool, ...]:
    return tuple(x == y for x, y in zip(a.coeffs, b.coeffs))


def _params(flavor: Flavor, t: AlgebraType, D: int, samples: int, seed: int, p: int) -> dict:
    return {"flavor": flavor.value, "type": t.to_json(), "degree": D,
            "samples": samples, "seed": seed, "prime": p}


def froberg_proven(t: AlgebraType) -> bool:
    return t.r <= t.n or t.n <= 3 or t.r == t.n + 1


def anick_proven(n: int, r: int) -> bool:
    return 4 * r <= n * n or 2 * r >= n * n or n <= 6


def lie_proven(n: int, r: int) -> bool:
    return 4 * r <= n * n or 3 * r >= n * n - 1


def koszul_predicted(n: int, r: int) -> bool:
    return 4 * r <= n * n or 4 * r >= 3 * n * n


def check_froberg(t: AlgebraType, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                  field_: PrimeField | None = None) -> ConjectureVerdict:
    field_ = field_ or PrimeField()
    expected = froberg_series(t, D)
    rep = generic_estimate(Flavor.COMMUTATIVE, t, D, samples, seed, field_)
    return ConjectureVerdict("froberg", _params(Flavor.COMMUTATIVE, t, D, samples, seed, field_.p),
                             expected, rep.estimate, _match(expected, rep.estimate),
                             froberg_proven(t), {"unanimous": list(rep.unanimous)})


def check_anick_quadratic(n: int, r: int, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                          field_: PrimeField | None = None) -> ConjectureVerdict:
    field_ = field_ or PrimeField()
    t = AlgebraType.quadratic(n, r)
    expected = bracket(quadratic_inverse(n, r, D))
    rep = generic_estimate(Flavor.NONCOMMUTATIVE, t, D, samples, seed, field_)
    return ConjectureVerdict("anick", _params(Flavor.NONCOMMUTATIVE, t, D, samples, seed, field_.p),
                             expected, rep.estimate, _match(expected, rep.estimate),
                             anick_proven(n, r), {"unanimous": list(rep.unanimous)})


def lie_expected(n: int, r: int, D: int) -> PowerSeries:
    return bracket(log_op(quadratic_inverse(n, r, D)), start=1)


def check_lie(n: int, r: int, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
              field_: PrimeField | None = None) -> ConjectureVerdict:
    if r > comb(n + 1, 2):
        raise ValueError(f"lie type needs r <= C(n+1,2) = {comb(n + 1, 2)}")
    if samples < 1:
        raise ValueError("need at least one sample")
    field_ = field_ or PrimeField()
    t = AlgebraType.quadratic(n, r)
    expected = lie_expected(n, r, D)
    per = [lie_series(sample_presentation(Flavor.LIE, t, field_, seed + i), D)
           for i in range(samples)]
    observed = PowerSeries([min(c) for c in zip(*(s.coeffs for s in per))])
    return ConjectureVerdict("lie", _params(Flavor.LIE, t, D, samples, seed, field_.p),
                             expected, observed, _match(expected, observed), lie_proven(n, r),
                             {"per_sample": [s.as_strings() for s in per]})


def check_genkos(n: int, r: int, D: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                 field_: PrimeField | None = None) -> ConjectureVerdict:
    """Run the numerical Koszul test on each sample; the verdict agrees when
    every sample passes exactly when the threshold predicts Koszulness.

    ``expected`` is the constant series 1 and ``observed`` the product
    A(z) A^!(-z) of the first sample that disagrees (or of the first sample).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    field_ = field_ or PrimeField()
    t = AlgebraType.quadratic(n, r)
    predicted = koszul_predicted(n, r)
    one = PowerSeries.one(D)
    products = [koszul_product(sample_presentation(Flavor.NONCOMMUTATIVE, t, field_, seed + i), D)
                for i in range(samples)]
    passes = [prod == one for prod in products]
    shown = next((prod for prod, ok in zip(products, passes) if ok != predicted), products[0])
    return ConjectureVerdict(
        "koszul", _params(Flavor.NONCOMMUTATIVE, t, D, samples, seed, field_.p),
        one, shown, _match(one, shown), True,
        {"predicted_koszul": predicted, "passes": passes,
         "agrees": all(ok == predicted for ok in passes)})


def lie_cubic_coefficient(n: int, r: int) -> Fraction:
    """Degree-3 coefficient of Log(1/(1 - n z + r z^2)), before bracketing."""
    return log_op(quadratic_inverse(n, r, 3))[3]
