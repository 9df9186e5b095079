"""Material feasibility layer: unit relations and the five device constraints.

All physical computation is in Gaussian (CGS) units: lengths in cm,
frequencies in rad/s, susceptibilities in esu, the nonlinear index n2 in
s cm^2/erg.  The five constraints gate a coherent, low-dephasing,
number-selective operating point:

  1. pump photon blockade        g_PP < w_P / (4 |alpha_P|^4)
  2. pump-noise purity           |alpha_si| / (4 |alpha_P|) << s
  3. squeezing-to-Kerr ratio     |Xi / gamma| in [0.1, 10]
  4. vanishing pump weight       |2 g_PP - g_Ps - g_Pi| |alpha_P|^2 << gamma N_s
  5. strength-to-loss            gamma / Gamma_cav large enough for the
                                 acceptable infidelity

"<<" is quantified as one order of magnitude; margins are reported so
stricter readings can be applied downstream.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ValidationError
from .hamiltonians import (
    HBAR_CGS,
    KerrSystem,
    detuning_weights,
    kerr_frequency,
    xi_parameter,
)

C_CGS = 2.99792458e10  # cm/s


def gamma_from_chi(chi1: float, chi2: float, chi3: float, eps: float) -> tuple[float, float, float]:
    """Displacement-field susceptibilities from electric-field ones.

    Gamma1 = chi1/eps, Gamma2 = chi2/eps^3,
    Gamma3 = chi3/eps^4 - 8 pi chi2^2/eps^5.
    """
    if eps <= 0:
        raise ValidationError("epsilon must be positive")
    return (chi1 / eps,
            chi2 / eps**3,
            chi3 / eps**4 - 8.0 * math.pi * chi2**2 / eps**5)


def zeta(omega: float, v_g: float, n: float, area: float, length: float) -> float:
    """Single-photon displacement-field amplitude sqrt(hbar w v_g n^3 / (2 A L c))."""
    if min(omega, v_g, n, area, length) <= 0:
        raise ValidationError("zeta arguments must be positive")
    return math.sqrt(HBAR_CGS * omega * v_g * n**3 / (2.0 * area * length * C_CGS))


def n_max(f: float, omega: float, g: float) -> float:
    """Largest cavity photon number before blockade, sqrt((1-f) w / g)."""
    if not (0.0 < f < 1.0):
        raise ValidationError("spectral edge fraction must lie in (0, 1)")
    if g <= 0:
        return math.inf
    return math.sqrt((1.0 - f) * omega / g)


def n2_from_chi3(chi3: float, n: float) -> float:
    """Classical nonlinear refractive index n2 = 24 pi^2 chi3 / (c n^2)."""
    return 24.0 * math.pi**2 * chi3 / (C_CGS * n**2)


def chi3_from_n2(n2: float, n: float) -> float:
    return n2 * C_CGS * n**2 / (24.0 * math.pi**2)


def scale_n2_with_density(n2: float, density_old: float, density_new: float) -> float:
    """Nonlinear index scaling for non-interacting dopants (linear in density)."""
    return n2 * (density_new / density_old)


def strength_to_loss(chi3: float, n: float, omega: float, v_g: float,
                     volume: float, Q: float) -> float:
    """gamma / Gamma_cav = 72 pi Q (hbar w / V) (v_g^2 / c^2) (chi3 / n^2)."""
    if volume <= 0 or Q <= 0:
        raise ValidationError("volume and Q must be positive")
    return (72.0 * math.pi * Q * (HBAR_CGS * omega / volume)
            * (v_g / C_CGS) ** 2 * (chi3 / n**2))


def figure_of_merit(omega: float, v_g: float, volume: float, Q: float,
                    n2: float | None = None, *, chi3: float | None = None,
                    n: float | None = None) -> tuple[float, float]:
    """F = Q hbar w v_g^2 n2 / (pi V c); returns (F, implied infidelity 1/F).

    n2 may be given directly or derived from chi3 and the refractive index.
    """
    if n2 is None:
        if chi3 is None or n is None:
            raise ValidationError("need n2, or chi3 together with n")
        n2 = n2_from_chi3(chi3, n)
    fom = Q * HBAR_CGS * omega * v_g**2 * n2 / (math.pi * volume * C_CGS)
    return fom, (math.inf if fom == 0 else 1.0 / fom)


@dataclass(frozen=True)
class MaterialSpec:
    """Cavity, material and operating-point description (Gaussian units).

    Mode order is (pump, signal, idler) in all per-mode triples.
    alpha_si and spacing describe the intended shaping run; they feed
    constraints 2 and 4.
    """

    chi1: float
    chi2: float
    chi3: float
    index: tuple[float, float, float]
    group_velocity: tuple[float, float, float]     # cm/s
    length: float                                   # cm
    area: float                                     # cm^2
    quality_factor: float
    alpha_pump: complex
    omega: tuple[float, float, float]               # rad/s
    epsilon: tuple[float, float, float] | None = None
    edge_fraction: float = 0.75
    n2: float | None = None                        # s cm^2 / erg
    alpha_si: complex = 2.0
    spacing: float = 4.0
    acceptable_infidelity: float = 0.01
    n_signal_typical: float | None = None
    # Resonant-enhancement picture: chi3 is the (EIT-enhanced) value at the
    # signal/idler resonance; Kerr pairs involving the off-resonant pump
    # are scaled down by this factor.
    pump_kerr_factor: float = 1.0

    def __post_init__(self):
        eps = self.epsilon
        if eps is None:
            eps = tuple(v**2 for v in self.index)
            object.__setattr__(self, "epsilon", eps)
        for e, n in zip(eps, self.index):
            if abs(e - n**2) > 1e-6 * max(1.0, abs(e)):
                raise ValidationError(f"epsilon {e} inconsistent with index {n}")
        if self.length <= 0 or self.area <= 0 or self.quality_factor <= 0:
            raise ValidationError("geometry and Q must be positive")
        if not (0.0 < self.edge_fraction < 1.0):
            raise ValidationError("edge fraction must lie in (0, 1)")
        if any(w <= 0 for w in self.omega):
            raise ValidationError("mode frequencies must be positive")

    @property
    def volume(self) -> float:
        return self.area * self.length

    @classmethod
    def from_dict(cls, d: dict) -> "MaterialSpec":
        d = dict(d)
        for key in ("alpha_pump", "alpha_si"):
            v = d.get(key)
            if isinstance(v, (list, tuple)):
                d[key] = complex(v[0], v[1])
        if "wavelength" in d and "omega" not in d:
            d["omega"] = tuple(2.0 * math.pi * C_CGS / lam for lam in d.pop("wavelength"))
        for key in ("index", "group_velocity", "omega", "epsilon"):
            if key in d and d[key] is not None:
                d[key] = tuple(float(v) for v in d[key])
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ValidationError(f"unknown material fields: {sorted(extra)}")
        missing = [f for f in ("chi1", "chi2", "chi3", "index", "group_velocity",
                               "length", "area", "quality_factor", "alpha_pump",
                               "omega") if f not in d]
        if missing:
            raise ValidationError(f"missing material fields: {missing}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "MaterialSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ConstraintEntry:
    name: str
    value: float
    bound: float | tuple[float, float]
    passed: bool
    margin: float
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "margin", float(self.margin))
        if isinstance(self.bound, tuple):
            object.__setattr__(self, "bound", tuple(float(b) for b in self.bound))
        else:
            object.__setattr__(self, "bound", float(self.bound))


@dataclass(frozen=True)
class ConstraintReport:
    entries: tuple[ConstraintEntry, ...]
    derived: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "overall_pass": self.overall_pass,
            "constraints": [asdict(e) for e in self.entries],
            "derived": self.derived,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ConstraintReport":
        d = json.loads(text)
        entries = tuple(
            ConstraintEntry(
                name=e["name"], value=e["value"],
                bound=tuple(e["bound"]) if isinstance(e["bound"], list) else e["bound"],
                passed=e["passed"], margin=e["margin"], note=e.get("note", ""))
            for e in d["constraints"])
        return cls(entries=entries, derived=d.get("derived", {}))

    def to_text(self) -> str:
        rows = [("constraint", "value", "bound", "margin", "status")]
        for e in self.entries:
            bound = (f"[{e.bound[0]:.3g}, {e.bound[1]:.3g}]"
                     if isinstance(e.bound, tuple) else f"{e.bound:.4g}")
            rows.append((e.name, f"{e.value:.4g}", bound, f"{e.margin:.3g}",
                         "pass" if e.passed else "FAIL"))
        widths = [max(len(r[k]) for r in rows) for k in range(5)]
        lines = ["  ".join(f"{v:<{w}}" for v, w in zip(r, widths)) for r in rows]
        lines.append(f"overall: {'pass' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines)


def check_blockade(g_pp: float, omega_pump: float, alpha_pump: complex) -> ConstraintEntry:
    """Constraint 1: pump self-phase modulation below the blockade bound."""
    bound = omega_pump / (4.0 * abs(alpha_pump) ** 4)
    passed = g_pp < bound
    margin = math.inf if g_pp <= 0 else bound / g_pp
    return ConstraintEntry("pump-blockade", g_pp, bound, passed, margin,
                           "negative pump SPM passes trivially")


def check_purity_bound(alpha_si: complex, alpha_pump: complex, s: float) -> ConstraintEntry:
    """Constraint 2: |alpha_si|/(4 |alpha_pump|) < s/10."""
    value = abs(alpha_si) / (4.0 * abs(alpha_pump))
    bound = s / 10.0
    margin = math.inf if value == 0 else bound / value
    return ConstraintEntry("pump-purity", value, bound, value < bound, margin)


def xi_over_gamma_estimate(chi2: float, chi3: float, alpha_pump: complex,
                           omega: float, area: float, length: float,
                           v_g: tuple[float, float, float],
                           index: tuple[float, float, float]) -> float:
    """Order-of-magnitude |Xi/gamma| from material constants.

    sqrt(L A / (18 hbar w)) sqrt(c v_P / (v_s v_i)) sqrt(1/(n_P n_s n_i))
    * chi2 |alpha_P| / chi3, with w the signal frequency.
    """
    if chi3 == 0:
        raise ValidationError("chi3 must be nonzero")
    vP, vs, vi = v_g
    nP, ns, ni = index
    return (math.sqrt(length * area / (18.0 * HBAR_CGS * omega))
            * math.sqrt(C_CGS * vP / (vs * vi))
            * math.sqrt(1.0 / (nP * ns * ni))
            * chi2 * abs(alpha_pump) / chi3)


def check_xi_over_gamma(ratio: float) -> ConstraintEntry:
    lo, hi = 0.1, 10.0
    mag = abs(ratio)
    passed = lo <= mag <= hi
    margin = 0.0 if mag == 0 else min(mag / lo, hi / mag)
    return ConstraintEntry("squeeze-to-kerr", mag, (lo, hi), passed, margin)


def check_pump_weight(g: np.ndarray, alpha_pump: complex, gamma: float,
                      n_signal_typical: float) -> ConstraintEntry:
    """Constraint 4: |2 g_PP - g_Ps - g_Pi| |alpha_P|^2 < gamma N_s / 10."""
    value = abs(2.0 * g[0, 0] - g[0, 1] - g[0, 2]) * abs(alpha_pump) ** 2
    bound = abs(gamma) * n_signal_typical / 10.0
    margin = math.inf if value == 0 else bound / value
    return ConstraintEntry("pump-weight", value, bound, value < bound, margin)


def check_strength_to_loss(ratio: float, acceptable_infidelity: float) -> ConstraintEntry:
    """Constraint 5: gamma/Gamma_cav > 2 pi / acceptable infidelity."""
    bound = 2.0 * math.pi / acceptable_infidelity
    margin = ratio / bound
    return ConstraintEntry("strength-to-loss", ratio, bound, ratio > bound, margin)


def kerr_system_from_material(spec: MaterialSpec) -> KerrSystem:
    """Physical-layer description (zetas, Kerr matrix) for a material."""
    eps_bar = float(np.mean(spec.epsilon))
    _, _, g3 = gamma_from_chi(spec.chi1, spec.chi2, spec.chi3, eps_bar)
    zetas = tuple(
        zeta(w, v, n, spec.area, spec.length)
        for w, v, n in zip(spec.omega, spec.group_velocity, spec.index))
    g = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            scale = spec.pump_kerr_factor if 0 in (i, j) else 1.0
            g[i, j] = scale * kerr_frequency(zetas[i], zetas[j], g3,
                                             spec.area, spec.length)
    return KerrSystem(omega=tuple(spec.omega), zeta=zetas, g=g,
                      length=spec.length, area=spec.area)


def full_report(spec: MaterialSpec) -> ConstraintReport:
    """Evaluate all five constraints plus the derived device quantities."""
    eps_bar = float(np.mean(spec.epsilon))
    g1, g2, g3 = gamma_from_chi(spec.chi1, spec.chi2, spec.chi3, eps_bar)
    system = kerr_system_from_material(spec)
    zetas = system.zeta
    g = system.g
    weights = detuning_weights(*spec.omega, g)
    gamma = weights.gamma
    xi = xi_parameter(*zetas, g2, spec.alpha_pump, spec.area, spec.length)
    n2 = spec.n2 if spec.n2 is not None else n2_from_chi3(spec.chi3, spec.index[1])
    fom, implied_inf = figure_of_merit(
        spec.omega[1], spec.group_velocity[1], spec.volume, spec.quality_factor, n2)
    ratio = strength_to_loss(spec.chi3, spec.index[1], spec.omega[1],
                             spec.group_velocity[1], spec.volume, spec.quality_factor)
    ns_typ = spec.n_signal_typical
    if ns_typ is None:
        ns_typ = max(1.0, abs(spec.alpha_si) ** 2)
    entries = (
        check_blockade(g[0, 0], spec.omega[0], spec.alpha_pump),
        check_purity_bound(spec.alpha_si, spec.alpha_pump, spec.spacing),
        check_xi_over_gamma(xi_over_gamma_estimate(
            spec.chi2, spec.chi3, spec.alpha_pump, spec.omega[1],
            spec.area, spec.length, spec.group_velocity, spec.index)),
        check_pump_weight(g, spec.alpha_pump, gamma, ns_typ),
        check_strength_to_loss(ratio, spec.acceptable_infidelity),
    )
    derived = {
        "zeta": list(zetas),
        "gamma_displacement": [g1, g2, g3],
        "kerr_matrix": g.tolist(),
        "delta_static": float(weights.delta),
        "detuning_weights": [float(weights.G_pump), float(weights.G_signal),
                             float(weights.G_idler)],
        "gamma": float(gamma),
        "xi": [float(xi.real), float(xi.imag)],
        "n2": n2,
        "figure_of_merit": fom,
        "implied_infidelity": implied_inf,
        "strength_to_loss": ratio,
        "n_max_pump": n_max(spec.edge_fraction, spec.omega[0], g[0, 0]),
    }
    return ConstraintReport(entries=entries, derived=derived)
