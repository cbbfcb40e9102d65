"""
ALIE ("a little is enough")
"""
import math

from scipy.optimize import bisect
from scipy.special import erf

from ..vecmath import ParamVector
from .config import RoundKnowledge

CDF_TOL = 1e-10


def normal_cdf(z: float) -> float:
    return 0.5 * (1.0 + float(erf(z / math.sqrt(2.0))))


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF by bisection on the erf-based CDF."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"Quantile level must lie in (0, 1), got {q}")
    z = bisect(lambda x: normal_cdf(x) - q, -40.0, 40.0, xtol=1e-14, maxiter=500)
    if abs(normal_cdf(z) - q) > CDF_TOL:
        raise ArithmeticError(f"Bisection did not reach |cdf(z) - q| <= {CDF_TOL} for q={q}")
    return float(z)


def supporters(k: int, k_m: int) -> int:
    """Benign clients the Byzantines need on their side: floor(k/2 + 1) - k_m."""
    return math.floor(k / 2 + 1) - k_m


def alie_zmax(k: int, k_m: int) -> float:
    """Largest z such that s benign clients sit further from the mean than the attack."""
    if not 1 <= k_m < k:
        raise ValueError(f"Need 1 <= k_m < k, got k={k}, k_m={k_m}")
    s = supporters(k, k_m)
    q = (k - k_m - s) / (k - k_m)
    if not 0.0 < q < 1.0:
        raise ValueError(f"Degenerate supporter count s={s} for k={k}, k_m={k_m} (q={q})")
    return normal_quantile(q)


def alie(kn: RoundKnowledge, z: float, alternate: bool = False) -> ParamVector:
    """m-bar - z_eff * sigma-bar; with ``alternate`` the sign of z flips on odd rounds."""
    z_eff = z if (not alternate or kn.t % 2 == 0) else -z
    return kn.benign_mean - z_eff * kn.benign_std
