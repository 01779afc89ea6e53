"""Two-qubit portraits of two-mode photon-number tomograms.

A portrait collapses the displaced joint photon-number distribution into
four cell probabilities under a product partition A1 x A2 of the photon
lattice. The two canonical partitions split each mode by "no photons vs
some" (zero-nonzero) or by photon-number parity (even-odd). Closed forms
exist for cat, coherent-product, and Gaussian states under both canonical
partitions; every other combination goes through a truncated table sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    InvalidParameter,
    NumericalNegativity,
    TailTooLarge,
    UnsupportedState,
)
from .states import (
    LOG_DOMAIN_THRESHOLD,
    CatSource,
    CatState,
    CoherentProduct,
    CoherentSource,
    GaussianSource,
    GaussianSpec,
    TomogramSource,
    gaussian_effective_mean,
    make_source,
)

# closed-form cells are plain exp/cosh arithmetic; anything below this is a bug
NEGATIVITY_FLOOR_CLOSED = -1e-12
# cells assembled from log-domain accumulation or infinite-sum identities
# tolerate slightly more rounding
NEGATIVITY_FLOOR_LOG = -1e-9
# component sums must balance against the tail deficit to within this
SUM_TOL = 1e-9

DEFAULT_NMAX = 30
DEFAULT_TAIL_EPS = 1e-4

LOG2 = math.log(2.0)

_MODE1_IDX = np.array([0, 2])  # (p1, q1) rows/cols of the dispersion matrix
_MODE2_IDX = np.array([1, 3])  # (p2, q2)


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


class PartitionScheme:
    """Product partition of the photon lattice into four cells.

    ``mode1`` and ``mode2`` are membership predicates for the "plus" set of
    each mode; the four cells are A1xA2, A1x~A2, ~A1xA2, ~A1x~A2 and always
    tile the lattice because the partition is a product. ``kind`` names the
    canonical schemes so closed-form fast paths can dispatch on it.
    """

    __slots__ = ("mode1", "mode2", "kind")

    def __init__(
        self,
        mode1: Callable[[int], bool],
        mode2: Callable[[int], bool],
        kind: str = "custom",
    ):
        self.mode1 = mode1
        self.mode2 = mode2
        self.kind = kind

    @staticmethod
    def zero_nonzero() -> "PartitionScheme":
        """Plus set = {0}: the mode saw no photons."""
        return PartitionScheme(lambda n: n == 0, lambda n: n == 0, "zero-nonzero")

    @staticmethod
    def even_odd() -> "PartitionScheme":
        """Plus set = even integers: the mode saw an even photon count."""
        return PartitionScheme(
            lambda n: n % 2 == 0, lambda n: n % 2 == 0, "even-odd"
        )

    @staticmethod
    def from_config(cfg) -> "PartitionScheme":
        """Build a scheme from a name or a per-mode rule pair.

        Accepts the canonical names "zero-nonzero" and "even-odd", or a
        dict {"mode1": rule, "mode2": rule} where each rule is "zero",
        "even", or {"threshold": t} meaning the plus set is n <= t.
        """
        if isinstance(cfg, str):
            name = cfg.strip().lower().replace("_", "-")
            if name == "zero-nonzero":
                return PartitionScheme.zero_nonzero()
            if name == "even-odd":
                return PartitionScheme.even_odd()
            raise InvalidParameter(
                f"unknown partition name {cfg!r}; use zero-nonzero or even-odd"
            )
        if isinstance(cfg, dict):
            def rule(spec, which):
                if spec == "zero":
                    return lambda n: n == 0
                if spec == "even":
                    return lambda n: n % 2 == 0
                if isinstance(spec, dict) and "threshold" in spec:
                    t = int(spec["threshold"])
                    if t < 0:
                        raise InvalidParameter(f"{which} threshold must be >= 0")
                    return lambda n: n <= t
                raise InvalidParameter(
                    f"bad {which} rule {spec!r}; use 'zero', 'even', or "
                    "{'threshold': t}"
                )
            return PartitionScheme(
                rule(cfg.get("mode1"), "mode1"),
                rule(cfg.get("mode2"), "mode2"),
                "custom",
            )
        raise InvalidParameter(f"cannot build a partition from {cfg!r}")

    def masks(self, nmax: int):
        """Boolean membership vectors for 0..nmax, one per mode."""
        ns = range(int(nmax) + 1)
        m1 = np.array([bool(self.mode1(n)) for n in ns])
        m2 = np.array([bool(self.mode2(n)) for n in ns])
        return m1, m2


def _nonproduct_cell_sums(table: np.ndarray, cell_of: Callable[[int, int], int]):
    """Debug-only reduction over an arbitrary cell labeling.

    Non-product partitions are deliberately not constructible through
    ``PartitionScheme``: summing a tomogram over cells that do not factor
    as A1 x A2 yields a four-vector that is not a two-qubit distribution.
    This helper exists so tests can demonstrate that failure.
    """
    out = np.zeros(4)
    n = table.shape[0]
    for i in range(n):
        for j in range(n):
            out[cell_of(i, j)] += table[i, j]
    return out


# ---------------------------------------------------------------------------
# portrait vector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PortraitVector:
    """Four cell probabilities plus the truncation deficit.

    Components are ordered (++, +-, -+, --) where + means membership in the
    mode's plus set. ``tail_deficit`` is the probability mass beyond the
    truncation bound; closed forms have deficit 0 by construction. The
    components are never renormalized: the deficit is the error measure.
    """

    w_pp: float
    w_pm: float
    w_mp: float
    w_mm: float
    tail_deficit: float = 0.0

    def __post_init__(self):
        comps = (self.w_pp, self.w_pm, self.w_mp, self.w_mm)
        if not all(math.isfinite(c) for c in comps) or not math.isfinite(
            self.tail_deficit
        ):
            raise NumericalNegativity("portrait components must be finite")
        low = min(comps)
        if low < NEGATIVITY_FLOOR_CLOSED:
            raise NumericalNegativity(
                f"portrait component {low:.6e} below the validity floor"
            )
        if self.tail_deficit < NEGATIVITY_FLOOR_CLOSED:
            raise NumericalNegativity(
                f"tail deficit {self.tail_deficit:.6e} is negative"
            )
        total = sum(comps) + self.tail_deficit
        if abs(total - 1.0) > SUM_TOL:
            raise NumericalNegativity(
                f"portrait components + deficit sum to {total:.12f}, not 1"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.w_pp, self.w_pm, self.w_mp, self.w_mm])

    def correlation(self) -> float:
        """The +-1 correlation E = w_pp - w_pm - w_mp + w_mm."""
        return self.w_pp - self.w_pm - self.w_mp + self.w_mm


def _build_vector(cells, deficit: float, floor: float, what: str) -> PortraitVector:
    """Validate raw cell values against a path-specific floor and clamp."""
    cells = [float(c) for c in cells]
    low = min(cells)
    if low < floor:
        raise NumericalNegativity(f"{what}: cell value {low:.6e} below {floor:.0e}")
    cells = [max(c, 0.0) for c in cells]
    deficit = float(deficit)
    if deficit < 0.0:
        if deficit < floor:
            raise NumericalNegativity(f"{what}: tail deficit {deficit:.6e} negative")
        deficit = 0.0
    return PortraitVector(cells[0], cells[1], cells[2], cells[3], deficit)


# ---------------------------------------------------------------------------
# truncated table sums
# ---------------------------------------------------------------------------


def portrait_truncated(
    src: TomogramSource,
    p: PartitionScheme,
    alpha1: complex,
    alpha2: complex,
    nmax: int = DEFAULT_NMAX,
    tail_eps: float = DEFAULT_TAIL_EPS,
) -> PortraitVector:
    """Portrait by direct cell sums over the table n1, n2 <= nmax.

    The mass beyond the truncation is reported as ``tail_deficit`` and the
    components are left un-renormalized. A deficit above ``tail_eps`` fails:
    the caller can raise nmax or move the displacement closer to origin.

    Raises:
        TailTooLarge: deficit > tail_eps (carries the deficit value).
        NumericalNegativity: propagated from the table evaluation.
    """
    if nmax < 1:
        raise InvalidParameter(f"nmax must be >= 1, got {nmax}")
    if not tail_eps > 0.0:
        raise InvalidParameter(f"tail_eps must be > 0, got {tail_eps}")
    table = src.tomogram_table(alpha1, alpha2, nmax)
    m1, m2 = p.masks(nmax)
    cells = (
        float(table[np.ix_(m1, m2)].sum()),
        float(table[np.ix_(m1, ~m2)].sum()),
        float(table[np.ix_(~m1, m2)].sum()),
        float(table[np.ix_(~m1, ~m2)].sum()),
    )
    deficit = 1.0 - sum(cells)
    if deficit > tail_eps:
        raise TailTooLarge(
            deficit,
            f"truncation at nmax={nmax} leaves deficit {deficit:.3e} "
            f"> tail_eps={tail_eps:.3e}",
        )
    return _build_vector(cells, deficit, NEGATIVITY_FLOOR_LOG, "truncated portrait")


# ---------------------------------------------------------------------------
# signed log-domain arithmetic helpers
# ---------------------------------------------------------------------------


def _log_cosh(x: float) -> float:
    ax = abs(x)
    return ax - LOG2 + math.log1p(math.exp(-2.0 * ax))


def _log_sinh_abs(x: float) -> Optional[float]:
    """log|sinh x|, or None when sinh is exactly zero."""
    ax = abs(x)
    if ax == 0.0:
        return None
    return ax - LOG2 + math.log1p(-math.exp(-2.0 * ax))


def _sgn(v: float) -> float:
    return 1.0 if v > 0.0 else (-1.0 if v < 0.0 else 0.0)


def _log_abs(v: float):
    """(log|v|, sign v) with None marking an exactly-zero factor."""
    if v == 0.0:
        return None, 0.0
    return math.log(abs(v)), _sgn(v)


def _signed_exp_sum(terms, log_prefactor: float) -> float:
    """exp(log_prefactor) * sum of signed exponentials.

    ``terms`` is a sequence of (log magnitude, sign) pairs; pairs whose
    magnitude is None (an exactly-zero factor) are skipped. The peak
    magnitude is factored out so the accumulation is exact to rounding
    even when individual terms would overflow double precision.
    """
    live = [(l, s) for (l, s) in terms if l is not None and s != 0.0]
    if not live:
        return 0.0
    peak = max(l for (l, _) in live)
    if peak == -math.inf:
        return 0.0
    acc = 0.0
    for (l, s) in live:
        acc += s * math.exp(l - peak)
    if acc == 0.0:
        return 0.0
    return math.copysign(math.exp(log_prefactor + peak + math.log(abs(acc))), acc)


# ---------------------------------------------------------------------------
# cat state closed forms
# ---------------------------------------------------------------------------


def cat_portrait_zero_nonzero(
    s: CatState, alpha1: complex, alpha2: complex
) -> PortraitVector:
    """Zero-nonzero portrait of the cat state in closed form.

    The first three cells are vacuum-row/column sums of the displaced
    distribution; the last is their complement, so the components sum to
    one exactly and the tail deficit is identically zero. Terms are
    accumulated as (sign, log magnitude) pairs above the amplitude
    threshold where cosh overflows.
    """
    g1, g2 = complex(s.gamma1), complex(s.gamma2)
    a1, a2 = complex(alpha1), complex(alpha2)
    ag1, ag2 = abs(g1) ** 2, abs(g2) ** 2
    aa1, aa2 = abs(a1) ** 2, abs(a2) ** 2
    big = ag1 + ag2
    z1 = a1.conjugate() * g1
    z2 = a2.conjugate() * g2
    r = 2.0 * (z1.real + z2.real)
    t = 2.0 * (z1.imag + z2.imag)

    if big <= LOG_DOMAIN_THRESHOLD and aa1 + aa2 + big < 200.0:
        pref = math.exp(-aa1 - aa2) / (2.0 * math.cosh(big))
        w_pp = pref * (math.cosh(r) + math.cos(t))
        w_pm = pref * (
            math.exp(aa2 + ag2) * math.cosh(2.0 * z1.real)
            + math.exp(aa2 - ag2) * math.cos(2.0 * z1.imag)
            - math.cosh(r)
            - math.cos(t)
        )
        w_mp = pref * (
            math.exp(aa1 + ag1) * math.cosh(2.0 * z2.real)
            + math.exp(aa1 - ag1) * math.cos(2.0 * z2.imag)
            - math.cosh(r)
            - math.cos(t)
        )
    else:
        logpref = -aa1 - aa2 - LOG2 - _log_cosh(big)
        lct, sct = _log_abs(math.cos(t))
        base = [(_log_cosh(r), 1.0), (lct, sct)]
        w_pp = _signed_exp_sum(base, logpref)
        lc1, sc1 = _log_abs(math.cos(2.0 * z1.imag))
        w_pm = _signed_exp_sum(
            [
                (aa2 + ag2 + _log_cosh(2.0 * z1.real), 1.0),
                (None if lc1 is None else aa2 - ag2 + lc1, sc1),
                (_log_cosh(r), -1.0),
                (lct, -sct),
            ],
            logpref,
        )
        lc2, sc2 = _log_abs(math.cos(2.0 * z2.imag))
        w_mp = _signed_exp_sum(
            [
                (aa1 + ag1 + _log_cosh(2.0 * z2.real), 1.0),
                (None if lc2 is None else aa1 - ag1 + lc2, sc2),
                (_log_cosh(r), -1.0),
                (lct, -sct),
            ],
            logpref,
        )
    w_mm = 1.0 - w_pp - w_pm - w_mp
    return _build_vector(
        (w_pp, w_pm, w_mp, w_mm),
        0.0,
        NEGATIVITY_FLOOR_CLOSED if big <= LOG_DOMAIN_THRESHOLD else NEGATIVITY_FLOOR_LOG,
        "cat zero-nonzero portrait",
    )


def _parity_components(parity: int, d: float, s: float):
    """Signed-log (Re, Im) of cosh(d+is) for even parity, sinh(d+is) for odd.

    cosh(d+is) = cosh d cos s + i sinh d sin s and
    sinh(d+is) = sinh d cos s + i cosh d sin s; each part is returned as a
    (log magnitude, sign) pair so products never overflow.
    """
    lcd = _log_cosh(d)
    lsd = _log_sinh_abs(d)
    sd = _sgn(d)
    lcs, scs = _log_abs(math.cos(s))
    lss, sss = _log_abs(math.sin(s))
    if parity == 0:
        re = (None, 0.0) if lcs is None else (lcd + lcs, scs)
        im = (None, 0.0) if (lsd is None or lss is None) else (lsd + lss, sd * sss)
    else:
        re = (None, 0.0) if (lsd is None or lcs is None) else (lsd + lcs, sd * scs)
        im = (None, 0.0) if lss is None else (lcd + lss, sss)
    return re, im


def cat_portrait_even_odd(
    s: CatState, alpha1: complex, alpha2: complex
) -> PortraitVector:
    """Even-odd portrait of the cat state in closed form.

    Each cell is a four-term combination: two coherent-branch terms with
    per-mode cosh/sinh factors of |alpha +- gamma|^2, and two interference
    terms oscillating with the displacement phases. All four terms are
    accumulated as (sign, log magnitude) pairs above the amplitude
    threshold, which the large-cat acceptance values require.
    """
    g1, g2 = complex(s.gamma1), complex(s.gamma2)
    a1, a2 = complex(alpha1), complex(alpha2)
    ag1, ag2 = abs(g1) ** 2, abs(g2) ** 2
    aa1, aa2 = abs(a1) ** 2, abs(a2) ** 2
    big = ag1 + ag2
    z1 = a1.conjugate() * g1
    z2 = a2.conjugate() * g2
    r = 2.0 * (z1.real + z2.real)
    t = 2.0 * (z1.imag + z2.imag)
    u1, u2 = abs(a1 + g1) ** 2, abs(a2 + g2) ** 2
    v1, v2 = abs(a1 - g1) ** 2, abs(a2 - g2) ** 2
    d1, d2 = aa1 - ag1, aa2 - ag2
    s1, s2 = 2.0 * z1.imag, 2.0 * z2.imag

    direct = big <= LOG_DOMAIN_THRESHOLD and max(u1, u2, v1, v2) < 200.0
    cells = []
    if direct:
        quarter = math.exp(-aa1 - aa2) / (4.0 * math.cosh(big))
        h = (math.cosh, math.sinh)
        gfun = (
            lambda d, sv: complex(math.cosh(d) * math.cos(sv), math.sinh(d) * math.sin(sv)),
            lambda d, sv: complex(math.sinh(d) * math.cos(sv), math.cosh(d) * math.sin(sv)),
        )
        cos_t, sin_t = math.cos(t), math.sin(t)
        for p1 in (0, 1):
            g1c = gfun[p1](d1, s1)
            for p2 in (0, 1):
                g2c = gfun[p2](d2, s2)
                gg = g1c * g2c
                val = (
                    math.exp(-r) * h[p1](u1) * h[p2](u2)
                    + math.exp(r) * h[p1](v1) * h[p2](v2)
                    + 2.0 * cos_t * gg.real
                    + 2.0 * sin_t * gg.imag
                )
                cells.append(quarter * val)
    else:
        logq = -aa1 - aa2 - 2.0 * LOG2 - _log_cosh(big)
        lct, sct = _log_abs(math.cos(t))
        lst, sst = _log_abs(math.sin(t))
        hu = (_log_cosh(u1), _log_cosh(u2), _log_cosh(v1), _log_cosh(v2))
        ho = (_log_sinh_abs(u1), _log_sinh_abs(u2), _log_sinh_abs(v1), _log_sinh_abs(v2))
        for p1 in (0, 1):
            re1, im1 = _parity_components(p1, d1, s1)
            l1u = hu[0] if p1 == 0 else ho[0]
            l1v = hu[2] if p1 == 0 else ho[2]
            for p2 in (0, 1):
                re2, im2 = _parity_components(p2, d2, s2)
                l2u = hu[1] if p2 == 0 else ho[1]
                l2v = hu[3] if p2 == 0 else ho[3]
                terms = []
                if l1u is not None and l2u is not None:
                    terms.append((-r + l1u + l2u, 1.0))
                if l1v is not None and l2v is not None:
                    terms.append((r + l1v + l2v, 1.0))
                # Re(g1 g2) = Re1 Re2 - Im1 Im2, Im(g1 g2) = Re1 Im2 + Im1 Re2
                if lct is not None:
                    if re1[1] != 0.0 and re2[1] != 0.0:
                        terms.append((LOG2 + lct + re1[0] + re2[0], sct * re1[1] * re2[1]))
                    if im1[1] != 0.0 and im2[1] != 0.0:
                        terms.append((LOG2 + lct + im1[0] + im2[0], -sct * im1[1] * im2[1]))
                if lst is not None:
                    if re1[1] != 0.0 and im2[1] != 0.0:
                        terms.append((LOG2 + lst + re1[0] + im2[0], sst * re1[1] * im2[1]))
                    if im1[1] != 0.0 and re2[1] != 0.0:
                        terms.append((LOG2 + lst + im1[0] + re2[0], sst * im1[1] * re2[1]))
                cells.append(_signed_exp_sum(terms, logq))
    return _build_vector(
        cells,
        1.0 - sum(cells),
        NEGATIVITY_FLOOR_CLOSED if direct else NEGATIVITY_FLOOR_LOG,
        "cat even-odd portrait",
    )


# ---------------------------------------------------------------------------
# coherent product closed forms
# ---------------------------------------------------------------------------


def coherent_portrait_zero_nonzero(
    s: CoherentProduct, alpha1: complex, alpha2: complex
) -> PortraitVector:
    """Zero-nonzero portrait of a coherent product: Poisson vacuum masses."""
    lam1 = abs(complex(alpha1) + complex(s.gamma1)) ** 2
    lam2 = abs(complex(alpha2) + complex(s.gamma2)) ** 2
    q1, q2 = math.exp(-lam1), math.exp(-lam2)
    return _build_vector(
        (q1 * q2, q1 * (1 - q2), (1 - q1) * q2, (1 - q1) * (1 - q2)),
        0.0,
        NEGATIVITY_FLOOR_CLOSED,
        "coherent zero-nonzero portrait",
    )


def coherent_portrait_even_odd(
    s: CoherentProduct, alpha1: complex, alpha2: complex
) -> PortraitVector:
    """Even-odd portrait of a coherent product.

    A Poisson count with mean lam is even with probability
    (1 + exp(-2 lam)) / 2; the two modes are independent so the portrait
    is the outer product of the per-mode parity pairs.
    """
    lam1 = abs(complex(alpha1) + complex(s.gamma1)) ** 2
    lam2 = abs(complex(alpha2) + complex(s.gamma2)) ** 2
    e1 = 0.5 * (1.0 + math.exp(-2.0 * lam1))
    e2 = 0.5 * (1.0 + math.exp(-2.0 * lam2))
    return _build_vector(
        (e1 * e2, e1 * (1 - e2), (1 - e1) * e2, (1 - e1) * (1 - e2)),
        0.0,
        NEGATIVITY_FLOOR_CLOSED,
        "coherent even-odd portrait",
    )


# ---------------------------------------------------------------------------
# Gaussian closed forms
# ---------------------------------------------------------------------------


class GaussianPortraitContext:
    """Per-state factorizations for closed-form Gaussian portraits.

    Both canonical portraits reduce to Gaussian quadratic forms in the
    displaced mean: per-mode and joint parity expectations give the
    even-odd cells, per-mode and joint vacuum projections give the
    zero-nonzero cells. Everything that depends only on the dispersion
    matrix is inverted once here; each evaluation is then a handful of
    2- and 4-dimensional quadratic forms, which is what makes Bell
    maximization over displacement settings affordable.

    These identities hold for the full (untruncated) photon sums, so the
    resulting portraits carry zero tail deficit.
    """

    def __init__(self, g: GaussianSpec):
        self.spec = g
        M = g.M
        I2, I4 = np.eye(2), np.eye(4)
        M1 = M[np.ix_(_MODE1_IDX, _MODE1_IDX)]
        M2 = M[np.ix_(_MODE2_IDX, _MODE2_IDX)]
        # parity: <(-1)^n> = exp(-mu' M^-1 mu / 2) / (2 sqrt(det M)) per mode
        self._iM1 = np.linalg.inv(M1)
        self._iM2 = np.linalg.inv(M2)
        self._iM = np.linalg.inv(M)
        self._pc1 = 0.5 / math.sqrt(float(np.linalg.det(M1)))
        self._pc2 = 0.5 / math.sqrt(float(np.linalg.det(M2)))
        self._pc12 = 0.25 / math.sqrt(float(np.linalg.det(M)))
        # vacuum projection: P(0) = 2 exp(-mu' (2M+I)^-1 mu) / sqrt(det(2M+I))
        A1, A2, A = 2.0 * M1 + I2, 2.0 * M2 + I2, 2.0 * M + I4
        self._iA1 = np.linalg.inv(A1)
        self._iA2 = np.linalg.inv(A2)
        self._iA = np.linalg.inv(A)
        self._vc1 = 2.0 / math.sqrt(float(np.linalg.det(A1)))
        self._vc2 = 2.0 / math.sqrt(float(np.linalg.det(A2)))
        self._vc12 = 4.0 / math.sqrt(float(np.linalg.det(A)))

    def even_odd(self, alpha1: complex, alpha2: complex) -> PortraitVector:
        mu = gaussian_effective_mean(self.spec, alpha1, alpha2)
        m1, m2 = mu[_MODE1_IDX], mu[_MODE2_IDX]
        p1 = self._pc1 * math.exp(-0.5 * float(m1 @ self._iM1 @ m1))
        p2 = self._pc2 * math.exp(-0.5 * float(m2 @ self._iM2 @ m2))
        p12 = self._pc12 * math.exp(-0.5 * float(mu @ self._iM @ mu))
        return _build_vector(
            (
                0.25 * (1.0 + p1 + p2 + p12),
                0.25 * (1.0 + p1 - p2 - p12),
                0.25 * (1.0 - p1 + p2 - p12),
                0.25 * (1.0 - p1 - p2 + p12),
            ),
            0.0,
            NEGATIVITY_FLOOR_LOG,
            "gaussian even-odd portrait",
        )

    def zero_nonzero(self, alpha1: complex, alpha2: complex) -> PortraitVector:
        mu = gaussian_effective_mean(self.spec, alpha1, alpha2)
        m1, m2 = mu[_MODE1_IDX], mu[_MODE2_IDX]
        P1 = self._vc1 * math.exp(-float(m1 @ self._iA1 @ m1))
        P2 = self._vc2 * math.exp(-float(m2 @ self._iA2 @ m2))
        P12 = self._vc12 * math.exp(-float(mu @ self._iA @ mu))
        return _build_vector(
            (P12, P1 - P12, P2 - P12, 1.0 - P1 - P2 + P12),
            0.0,
            NEGATIVITY_FLOOR_LOG,
            "gaussian zero-nonzero portrait",
        )


def gaussian_portrait_even_odd(
    g: GaussianSpec, alpha1: complex, alpha2: complex
) -> PortraitVector:
    return GaussianPortraitContext(g).even_odd(alpha1, alpha2)


def gaussian_portrait_zero_nonzero(
    g: GaussianSpec, alpha1: complex, alpha2: complex
) -> PortraitVector:
    return GaussianPortraitContext(g).zero_nonzero(alpha1, alpha2)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def make_portrait_fn(
    src,
    p: PartitionScheme,
    nmax: int = DEFAULT_NMAX,
    tail_eps: float = DEFAULT_TAIL_EPS,
    prefer_closed_form: bool = True,
) -> Callable[[complex, complex], PortraitVector]:
    """Bind a state or source and a partition into a settings -> portrait map.

    States with closed forms under a canonical partition get the exact
    zero-deficit evaluator; everything else falls back to truncated table
    sums with the given nmax and tail_eps. The returned callable is what
    the Bell-matrix assembly and the maximizer consume.
    """
    source = make_source(src) if not isinstance(src, TomogramSource) else src
    state = getattr(source, "state", None)
    if prefer_closed_form and p.kind == "zero-nonzero":
        if isinstance(state, CatState):
            return lambda a1, a2: cat_portrait_zero_nonzero(state, a1, a2)
        if isinstance(state, CoherentProduct):
            return lambda a1, a2: coherent_portrait_zero_nonzero(state, a1, a2)
        if isinstance(state, GaussianSpec):
            ctx = GaussianPortraitContext(state)
            return ctx.zero_nonzero
    if prefer_closed_form and p.kind == "even-odd":
        if isinstance(state, CatState):
            return lambda a1, a2: cat_portrait_even_odd(state, a1, a2)
        if isinstance(state, CoherentProduct):
            return lambda a1, a2: coherent_portrait_even_odd(state, a1, a2)
        if isinstance(state, GaussianSpec):
            ctx = GaussianPortraitContext(state)
            return ctx.even_odd
    return lambda a1, a2: portrait_truncated(source, p, a1, a2, nmax, tail_eps)
