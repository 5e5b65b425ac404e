"""Parameter sets and KEM key material."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import CurveParams
from .errors import ParameterError
from .laurent import LaurentSeries, PrecisionPolicy
from .padic import is_prime


def select_prime(lam: int) -> int:
    """Largest prime with exactly ``lam`` bits that is 2 mod 3."""
    for q in range(2**lam - 1, 2 ** (lam - 1) - 1, -1):
        if q % 3 == 2 and is_prime(q):
            return q
    raise ParameterError(f"no {lam}-bit prime = 2 mod 3")


@dataclass(frozen=True)
class ParamSet:
    """The four size knobs plus the derived prime and precision policy.

    ``precision`` is the p-adic digit count per coefficient; ``window``
    defaults to ``d``.
    """

    name: str
    preset_id: int
    lam: int
    d: int
    M: int
    ell_e_log: int
    precision: int
    n_max: int = 2
    prime: int = field(default=0)
    window: int = field(default=0)

    def __post_init__(self):
        if not 8 <= self.lam <= 16:
            raise ParameterError("lambda must lie in [8, 16]")
        if not 4 <= self.d <= 16:
            raise ParameterError("d must lie in [4, 16]")
        if not 4 <= self.M <= 32:
            raise ParameterError("M must lie in [4, 32]")
        if not 2**10 <= self.ell_e_log <= 2**16:
            raise ParameterError("log2(l^e) must lie in [2^10, 2^16]")
        if self.n_max < 1:
            raise ParameterError("n_max must be >= 1")
        if not self.prime:
            object.__setattr__(self, "prime", select_prime(self.lam))
        if not self.window:
            object.__setattr__(self, "window", self.d)
        p = self.prime
        if p.bit_length() != self.lam or p % 3 != 2 or not is_prime(p):
            raise ParameterError(f"{p} is not a {self.lam}-bit prime = 2 mod 3")
        if self.window < self.d or self.precision < self.d:
            raise ParameterError("policy must satisfy W >= d and R >= d")
        PrecisionPolicy(self.window, self.precision)

    @property
    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.window, self.precision)


# Precision per preset: enough for a full depth-M torsion expansion where the
# curve data still fits the log2(l^e) field (high is capped by that field).
PRESETS: dict[str, ParamSet] = {
    "iot": ParamSet("iot", 1, lam=8, d=4, M=4, ell_e_log=1024, precision=10),
    "sec128": ParamSet("sec128", 2, lam=8, d=8, M=8, ell_e_log=16384, precision=36),
    "high": ParamSet("high", 3, lam=16, d=16, M=16, ell_e_log=32768, precision=60),
}
PRESETS_BY_ID = {ps.preset_id: ps for ps in PRESETS.values()}


def get_preset(name: str) -> ParamSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class PublishedDigit:
    """Wire-truncated Engel digit: scale, t-order and the first base-p digit
    of each of the first ``d`` unit coefficients."""

    scale: int
    order: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class SecretKey:
    params: ParamSet
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= self.params.n_max:
            raise ParameterError(f"secret n={self.n} outside [1, {self.params.n_max}]")


@dataclass(frozen=True)
class PublicKey:
    params: ParamSet
    digits: tuple[PublishedDigit, ...]
    j: LaurentSeries
    curve: CurveParams


@dataclass(frozen=True)
class Ciphertext:
    params: ParamSet
    curve: CurveParams
    payload: bytes = b""
