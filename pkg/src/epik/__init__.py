"""p-adic Engel expansions and a 2-isogeny key encapsulation toy."""

from .curve import (
    AffinePoint,
    CurveParams,
    IsogenyStep,
    TorsionPoint,
    base_curve,
    chain,
    count_points_fp,
    j_invariant,
    reduce_fiber,
    select_torsion,
    two_torsion_lift,
    velu_eval,
    velu_step,
)
from .engel import (
    EngelDigit,
    EngelExpansion,
    digit_period_check,
    engel_add,
    engel_decode,
    engel_encode,
    engel_inv,
    engel_mul,
    leading_part,
    precision_for_depth,
)
from .errors import (
    ConvergenceError,
    DecodeError,
    DomainError,
    EpikError,
    ParameterError,
    PrecisionError,
)
from .kem import (
    brute_force_recover_n,
    decap,
    derive_key,
    encap,
    keygen,
    pke_decrypt,
    pke_encrypt,
)
from .keys import PRESETS, Ciphertext, ParamSet, PublicKey, PublishedDigit, SecretKey, get_preset
from .laurent import (
    LaurentSeries,
    PrecisionPolicy,
    gauss_valuation,
    series_add,
    series_inv,
    series_mul,
    series_newton_root,
)
from .padic import (
    PadicScalar,
    padic_add,
    padic_from_int,
    padic_from_rational,
    padic_integer_part,
    padic_inv,
    padic_mul,
    padic_neg,
    padic_valuation,
)

__version__ = "0.1.0"
