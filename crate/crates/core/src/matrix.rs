//! 2x2 integer and real matrices, their characteristic invariants, spectrum
//! classification and the structure of singular integer matrices.

use crate::error::{Error, Result};

/// Trace, determinant and discriminant of a 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharInvariants<T> {
    pub trace: T,
    pub determinant: T,
    pub discriminant: T,
}

/// A 2x2 integer matrix `[[a, b], [c, d]]` whose entries are bounded by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    k: u32,
}

impl IntMatrix2 {
    pub fn new(k: u32, [[a, b], [c, d]]: [[i64; 2]; 2]) -> Result<Self> {
        for entry in [a, b, c, d] {
            if entry.unsigned_abs() > u64::from(k) {
                return Err(Error::EntryOutOfBound { entry, bound: k });
            }
        }
        Ok(Self { a, b, c, d, k })
    }

    /// Matrix with the smallest bound that admits its entries.
    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        let k = rows
            .iter()
            .flatten()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0);
        let k = u32::try_from(k).expect("entry magnitude exceeds u32");
        Self::new(k, rows).expect("bound chosen to fit")
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn bound(&self) -> u32 {
        self.k
    }

    pub fn invariants(&self) -> CharInvariants<i64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        CharInvariants {
            trace: a + d,
            determinant: a * d - b * c,
            discriminant: (a - d) * (a - d) + 4 * b * c,
        }
    }

    /// `M - lambda * I`, with the bound widened to hold the shifted diagonal.
    pub fn shifted(&self, lambda: i64) -> Self {
        Self::from_rows([[self.a - lambda, self.b], [self.c, self.d - lambda]])
    }

    pub fn to_real(&self) -> RealMatrix2 {
        RealMatrix2::new([
            [self.a as f64, self.b as f64],
            [self.c as f64, self.d as f64],
        ])
    }

    pub fn gershgorin_bound(&self) -> i64 {
        2 * [self.a, self.b, self.c, self.d]
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or(0)
    }

    /// Decomposes a singular matrix into either a zero pattern or the
    /// canonical coprime quadruple with `M = [[a c, b c], [a d, b d]]`.
    pub fn singular_representation(&self) -> Result<SingularForm> {
        let det = self.invariants().determinant;
        if det != 0 {
            return Err(Error::NotSingular(det));
        }
        let (m11, m12, m21, m22) = (self.a, self.b, self.c, self.d);
        if [m11, m12, m21, m22].contains(&0) {
            return Ok(SingularForm::ZeroPattern);
        }
        let c = gcd(m11, m12);
        let (mut a, mut b, mut c) = (m11 / c, m12 / c, c);
        let mut d = m21 / a;
        debug_assert_eq!(b * d, m22);
        if a < 0 {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        Ok(SingularForm::Quadruple { a, b, c, d })
    }
}

/// A 2x2 real matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMatrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RealMatrix2 {
    pub fn new([[a, b], [c, d]]: [[f64; 2]; 2]) -> Self {
        Self { a, b, c, d }
    }

    pub fn invariants(&self) -> CharInvariants<f64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        CharInvariants {
            trace: a + d,
            determinant: a * d - b * c,
            discriminant: (a - d) * (a - d) + 4.0 * b * c,
        }
    }

    /// Eigenvalue pair from the quadratic formula on `(tr, det)`.
    ///
    /// The root of larger magnitude is formed without cancellation and the
    /// other one as `det / big`, so the sign of each eigenvalue follows the
    /// signs of trace and determinant exactly.
    pub fn classify_spectrum(&self) -> SpectrumClass {
        let inv = self.invariants();
        let disc = inv.discriminant;
        if disc < 0.0 {
            return SpectrumClass::ComplexPair;
        }
        if disc == 0.0 {
            return SpectrumClass::Repeated(inv.trace / 2.0);
        }
        let root = disc.sqrt();
        let big = if inv.trace >= 0.0 {
            (inv.trace + root) / 2.0
        } else {
            (inv.trace - root) / 2.0
        };
        let small = inv.determinant / big;
        let (lo, hi) = if small < big { (small, big) } else { (big, small) };
        if lo < hi {
            SpectrumClass::RealDistinct(lo, hi)
        } else {
            // disc underflowed relative to the trace
            SpectrumClass::Repeated(lo)
        }
    }

    pub fn gershgorin_bound(&self) -> f64 {
        2.0 * [self.a, self.b, self.c, self.d]
            .iter()
            .fold(0.0_f64, |m, e| m.max(e.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumClass {
    ComplexPair,
    /// `lo < hi`.
    RealDistinct(f64, f64),
    Repeated(f64),
}

impl SpectrumClass {
    /// Real eigenvalues with multiplicity; empty for a complex pair.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        match *self {
            SpectrumClass::ComplexPair => Vec::new(),
            SpectrumClass::RealDistinct(lo, hi) => vec![lo, hi],
            SpectrumClass::Repeated(l) => vec![l, l],
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, SpectrumClass::ComplexPair)
    }
}

/// Structure of a singular integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularForm {
    /// At least two entries vanish.
    ZeroPattern,
    /// Nonzero `a, b, c, d` with `gcd(a, b) = 1` and `a > 0`.
    Quadruple { a: i64, b: i64, c: i64, d: i64 },
}

impl SingularForm {
    pub fn reconstruct(&self) -> Option<[[i64; 2]; 2]> {
        match *self {
            SingularForm::ZeroPattern => None,
            SingularForm::Quadruple { a, b, c, d } => Some([[a * c, b * c], [a * d, b * d]]),
        }
    }
}

/// Nonnegative gcd.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}
