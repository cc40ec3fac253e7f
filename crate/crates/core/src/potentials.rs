//! Potentials, the radial reduction in `d` dimensions, and closed-form
//! reference energies.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;

use crate::basis::BasisWindow;
use crate::error::{domain, Error, Result};

/// One additive piece of a potential.
#[derive(Clone)]
pub enum Term {
    /// `coeff · x^exponent`
    Power {
        coeff: f64,
        exponent: i32,
    },
    /// `amplitude · sin²(x)`
    SineSquared {
        amplitude: f64,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Power { coeff, exponent } => write!(f, "{coeff}·x^{exponent}"),
            Term::SineSquared { amplitude } => write!(f, "{amplitude}·sin²x"),
            Term::Custom(_) => f.write_str("<custom>"),
        }
    }
}

impl Term {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Term::Power { coeff, .. } if *coeff == 0.0 => 0.0,
            Term::Power { coeff, exponent } => coeff * powi(x, *exponent),
            Term::SineSquared { amplitude } => {
                let s = libm::sin(x);
                amplitude * s * s
            }
            Term::Custom(f) => f(x),
        }
    }
}

pub(crate) fn powi(x: f64, exponent: i32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exponent.unsigned_abs() {
        acc *= x;
    }
    if exponent < 0 {
        1.0 / acc
    } else {
        acc
    }
}

/// A real potential `V(x)` with the metadata assembly needs.
///
/// `domain_left` is `-∞` for problems on the line and `0` for radial
/// problems. `singularity_order` is the smallest `p` with `V(x)·(x -
/// domain_left)^p` bounded. A confinement box means `V = +∞` outside it; it is
/// kept as metadata so that windows can be clamped instead of integrating an
/// infinite potential.
#[derive(Clone, Debug)]
pub struct Potential {
    id: String,
    terms: Vec<Term>,
    domain_left: f64,
    singularity_order: u32,
    confinement: Option<(f64, f64)>,
}

impl Potential {
    /// Sum of `terms` on the whole line.
    pub fn new(id: impl Into<String>, terms: Vec<Term>) -> Self {
        let mut p = Self {
            id: id.into(),
            terms,
            domain_left: f64::NEG_INFINITY,
            singularity_order: 0,
            confinement: None,
        };
        p.singularity_order = p.inverse_power_order();
        p
    }

    /// Sum of `terms` on the half line `r > 0`.
    pub fn radial(id: impl Into<String>, terms: Vec<Term>) -> Self {
        Self {
            domain_left: 0.0,
            ..Self::new(id, terms)
        }
    }

    pub fn custom(
        id: impl Into<String>,
        domain_left: f64,
        singularity_order: u32,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            terms: vec![Term::Custom(Arc::new(f))],
            domain_left,
            singularity_order,
            confinement: None,
        }
    }

    pub fn zero() -> Self {
        Self::new("zero", Vec::new())
    }

    /// `c·x²`
    pub fn harmonic(c: f64) -> Self {
        Self::new("harmonic", vec![Term::Power { coeff: c, exponent: 2 }])
    }

    /// `α·x² + β·x⁴`
    pub fn quartic_anharmonic(alpha: f64, beta: f64) -> Self {
        Self::new(
            "quartic_anharmonic",
            vec![
                Term::Power {
                    coeff: alpha,
                    exponent: 2,
                },
                Term::Power {
                    coeff: beta,
                    exponent: 4,
                },
            ],
        )
    }

    /// `-e²/r`
    pub fn hydrogenic(e: f64) -> Self {
        Self::radial(
            "hydrogenic",
            vec![Term::Power {
                coeff: -e * e,
                exponent: -1,
            }],
        )
    }

    /// `A·r² + B·r⁻⁴ + C·r⁻⁶`
    pub fn singular_abc(a: f64, b: f64, c: f64) -> Self {
        Self::radial(
            "singular_ABC",
            vec![
                Term::Power { coeff: a, exponent: 2 },
                Term::Power { coeff: b, exponent: -4 },
                Term::Power { coeff: c, exponent: -6 },
            ],
        )
    }

    /// `V₀·sin²x` inside `[-π/2, π/2]`, infinite outside.
    pub fn sine_squared_confined(v0: f64) -> Self {
        Self::new("sine_squared_confined", vec![Term::SineSquared { amplitude: v0 }])
            .with_confinement(-FRAC_PI_2, FRAC_PI_2)
    }

    pub fn with_confinement(mut self, lo: f64, hi: f64) -> Self {
        self.confinement = Some((lo, hi));
        self
    }

    pub fn with_singularity_order(mut self, order: u32) -> Self {
        self.singularity_order = order;
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn domain_left(&self) -> f64 {
        self.domain_left
    }

    pub fn singularity_order(&self) -> u32 {
        self.singularity_order
    }

    pub fn confinement(&self) -> Option<(f64, f64)> {
        self.confinement
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    fn inverse_power_order(&self) -> u32 {
        self.terms
            .iter()
            .filter_map(|t| match t {
                Term::Power { coeff, exponent } if *coeff != 0.0 && *exponent < 0 => Some(exponent.unsigned_abs()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Coefficients `[c₀, …, c₄]` when `V` is a polynomial of degree ≤ 4.
    pub fn polynomial(&self) -> Option<[f64; 5]> {
        let mut c = [0.0; 5];
        for t in &self.terms {
            match t {
                Term::Power { coeff, .. } if *coeff == 0.0 => {}
                Term::Power { coeff, exponent } if (0..=4).contains(exponent) => {
                    c[*exponent as usize] += coeff;
                }
                _ => return None,
            }
        }
        Some(c)
    }

    /// Whether `V(-x) = V(x)` is known structurally.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|t| match t {
            Term::Power { coeff, exponent } => *coeff == 0.0 || exponent % 2 == 0,
            Term::SineSquared { .. } => true,
            Term::Custom(_) => false,
        })
    }

    /// Checks that matrix elements of `V` on `window` are finite and that the
    /// window respects the confinement box.
    ///
    /// A window may start exactly at `domain_left` when the singularity is at
    /// most `r⁻²`: every basis product vanishes like `(x - a)²` there, so the
    /// integrand stays bounded. Stronger singularities need `a > domain_left`.
    pub fn check_window(&self, window: &BasisWindow) -> Result<()> {
        if let Some((lo, hi)) = self.confinement {
            if window.a() < lo || window.b() > hi {
                return Err(domain(format!(
                    "window [{}, {}] leaves the confinement box [{lo}, {hi}] of `{}`",
                    window.a(),
                    window.b(),
                    self.id
                )));
            }
        }
        if window.a() < self.domain_left {
            return Err(domain(format!(
                "window starts at {} but `{}` is only defined for x > {}",
                window.a(),
                self.id,
                self.domain_left
            )));
        }
        if self.singularity_order > 2 && window.a() <= self.domain_left {
            return Err(domain(format!(
                "`{}` has an r^-{} singularity; the window must start strictly above {}",
                self.id, self.singularity_order, self.domain_left
            )));
        }
        Ok(())
    }
}

/// Names accepted by [`catalog`]; these strings are part of the CLI and
/// config-file format.
pub const CATALOG_NAMES: [&str; 6] = [
    "zero",
    "harmonic",
    "quartic_anharmonic",
    "hydrogenic",
    "singular_ABC",
    "sine_squared_confined",
];

/// Looks up a named potential.
///
/// | name | params | potential |
/// |------|--------|-----------|
/// | `zero` | – | `0` |
/// | `harmonic` | `[]` or `[c]` | `c·x²` (`c = 1`) |
/// | `quartic_anharmonic` | `[]` or `[α, β]` | `α·x² + β·x⁴` (`α = β = 1`) |
/// | `hydrogenic` | `[]` or `[e]` | `-e²/r` (`e = 1`) |
/// | `singular_ABC` | `[A, B, C]` | `A·r² + B·r⁻⁴ + C·r⁻⁶` |
/// | `sine_squared_confined` | `[V₀]` | `V₀·sin²x` on `[-π/2, π/2]` |
pub fn catalog(name: &str, params: &[f64]) -> Result<Potential> {
    let arity = |expected: &'static str| Error::Arity {
        name: name.to_string(),
        expected,
        got: params.len(),
    };
    match (name, params) {
        ("zero", []) => Ok(Potential::zero()),
        ("zero", _) => Err(arity("0")),
        ("harmonic", []) => Ok(Potential::harmonic(1.0)),
        ("harmonic", [c]) => Ok(Potential::harmonic(*c)),
        ("harmonic", _) => Err(arity("0 or 1")),
        ("quartic_anharmonic", []) => Ok(Potential::quartic_anharmonic(1.0, 1.0)),
        ("quartic_anharmonic", [a, b]) => Ok(Potential::quartic_anharmonic(*a, *b)),
        ("quartic_anharmonic", _) => Err(arity("0 or 2")),
        ("hydrogenic", []) => Ok(Potential::hydrogenic(1.0)),
        ("hydrogenic", [e]) => Ok(Potential::hydrogenic(*e)),
        ("hydrogenic", _) => Err(arity("0 or 1")),
        ("singular_ABC" | "singular_abc", [a, b, c]) => Ok(Potential::singular_abc(*a, *b, *c)),
        ("singular_ABC" | "singular_abc", _) => Err(arity("3")),
        ("sine_squared_confined", [v0]) => Ok(Potential::sine_squared_confined(*v0)),
        ("sine_squared_confined", _) => Err(arity("1")),
        _ => Err(Error::UnknownPotential(name.to_string())),
    }
}

/// A spherically symmetric problem in `d` dimensions with angular momentum
/// `ℓ`.
#[derive(Clone, Debug)]
pub struct RadialProblem {
    dimension: u32,
    angular_momentum: u32,
    potential: Potential,
}

impl RadialProblem {
    pub fn new(dimension: u32, angular_momentum: u32, potential: Potential) -> Result<Self> {
        if dimension < 2 {
            return Err(domain(format!("radial problems need d >= 2, got d = {dimension}")));
        }
        Ok(Self {
            dimension,
            angular_momentum,
            potential,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn angular_momentum(&self) -> u32 {
        self.angular_momentum
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }
}

/// `(2ℓ+d-1)(2ℓ+d-3)/4`, the coefficient of `1/r²` in the effective
/// potential.
pub fn centrifugal_coefficient(dimension: u32, angular_momentum: u32) -> f64 {
    let k = 2 * i64::from(angular_momentum) + i64::from(dimension);
    ((k - 1) * (k - 3)) as f64 / 4.0
}

/// `U(r) = V(r) + (2ℓ+d-1)(2ℓ+d-3)/(4r²)` on `r > 0`.
///
/// `d = 2, ℓ = 0` is rejected: its coefficient is `-1/4` and `U` is unbounded
/// below at the origin.
pub fn effective_radial(problem: &RadialProblem) -> Result<Potential> {
    let (d, l) = (problem.dimension, problem.angular_momentum);
    if d == 2 && l == 0 {
        return Err(Error::Unsupported(
            "d = 2, l = 0: the effective potential r^2 - 1/(4r^2) representation fails \
             (attractive inverse-square term at the origin)"
                .to_string(),
        ));
    }
    let base = &problem.potential;
    let coeff = centrifugal_coefficient(d, l);
    let mut terms = base.terms.clone();
    if coeff != 0.0 {
        terms.push(Term::Power { coeff, exponent: -2 });
    }
    Ok(Potential {
        id: format!("{}[d={d},l={l}]", base.id),
        terms,
        domain_left: 0.0,
        singularity_order: base.singularity_order.max(2),
        confinement: base.confinement,
    })
}

/// `E = 4n + 2ℓ + d - 4` for `-Δ + r²` in `d` dimensions, `n = 1, 2, …`.
pub fn oscillator_exact_energy(n: u32, angular_momentum: u32, dimension: u32) -> f64 {
    (4 * i64::from(n) + 2 * i64::from(angular_momentum) + i64::from(dimension) - 4) as f64
}

/// `E = -e⁴ / (4(n+ℓ)²)` for `-Δ - e²/r` in three dimensions.
pub fn hydrogen_exact_energy(n: u32, angular_momentum: u32, e: f64) -> f64 {
    let k = f64::from(n + angular_momentum);
    -(e * e * e * e) / (4.0 * k * k)
}

/// Relative tolerance on the quasi-exact solvability constraint.
pub const SINGULAR_CONSTRAINT_TOL: f64 = 1e-12;

/// Ground state `4 + B/√C` of `-d²/dr² + r² + B r⁻⁴ + C r⁻⁶`, valid only on
/// the manifold `(2√C + B)² = C(1 + 8√C)`.
pub fn singular_ground_state(b: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain(format!("C must be positive, got {c}")));
    }
    let root = libm::sqrt(c);
    let lhs = (2.0 * root + b) * (2.0 * root + b);
    let rhs = c * (1.0 + 8.0 * root);
    let residual = libm::fabs(lhs - rhs) / rhs;
    if residual > SINGULAR_CONSTRAINT_TOL {
        return Err(Error::ConstraintViolation { residual });
    }
    Ok(4.0 + b / root)
}

/// An exactly solvable hydrogen atom in a hard sphere of radius `radius`
/// (`A = 1`, Dirichlet walls at `0` and `radius`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinedHydrogenCase {
    pub angular_momentum: u32,
    /// 1 + number of radial nodes.
    pub state: u32,
    pub radius: f64,
    pub energy: f64,
}

pub fn confined_hydrogen_cases() -> [ConfinedHydrogenCase; 12] {
    let s3 = libm::sqrt(3.0);
    let s5 = libm::sqrt(5.0);
    let s7 = libm::sqrt(7.0);
    let row = |angular_momentum, state, radius, denom: f64| ConfinedHydrogenCase {
        angular_momentum,
        state,
        radius,
        energy: -1.0 / denom,
    };
    [
        row(0, 1, 4.0, 16.0),
        row(1, 1, 12.0, 36.0),
        row(2, 1, 24.0, 64.0),
        row(3, 1, 40.0, 100.0),
        row(0, 1, 3.0 * (3.0 - s3), 36.0),
        row(0, 2, 3.0 * (3.0 + s3), 36.0),
        row(1, 1, 4.0 * (5.0 - s5), 64.0),
        row(1, 2, 4.0 * (5.0 + s5), 64.0),
        row(2, 1, 5.0 * (7.0 - s7), 100.0),
        row(2, 2, 5.0 * (7.0 + s7), 100.0),
        row(3, 1, 36.0, 144.0),
        row(3, 2, 72.0, 144.0),
    ]
}

/// `-A/r + ℓ(ℓ+1)/r²`, the radial operator for the confined atom.
pub fn confined_hydrogen_potential(case: &ConfinedHydrogenCase) -> Result<Potential> {
    let base = Potential::hydrogenic(1.0).with_confinement(0.0, case.radius);
    effective_radial(&RadialProblem::new(3, case.angular_momentum, base)?)
}
