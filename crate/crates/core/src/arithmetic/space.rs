//! Even-dimensional orthogonal spaces over Q_p, classified by (disc, epsilon).

use std::fmt;

use super::field::{hilbert, LocalField, Sign, SquareClass};
use crate::error::{Error, Result};

/// Anisotropic kernel of an even orthogonal space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnisoKernel {
    /// Split: a sum of hyperbolic planes.
    Zero,
    /// The binary space V_(d,c), anisotropic because d is not a square.
    Plane { d: SquareClass, c: SquareClass },
    /// The norm form of the quaternion division algebra.
    Quaternion,
}

impl AnisoKernel {
    pub fn dim(self) -> u32 {
        match self {
            AnisoKernel::Zero => 0,
            AnisoKernel::Plane { .. } => 2,
            AnisoKernel::Quaternion => 4,
        }
    }
}

/// A 2m-dimensional orthogonal space, stored through its Witt decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalSpace {
    field: LocalField,
    half_dim: u32,
    witt_index: u32,
    kernel: AnisoKernel,
}

impl OrthogonalSpace {
    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn half_dim(&self) -> u32 {
        self.half_dim
    }

    pub fn witt_index(&self) -> u32 {
        self.witt_index
    }

    pub fn kernel(&self) -> AnisoKernel {
        self.kernel
    }

    /// Discriminant, read off the anisotropic kernel.
    pub fn disc(&self) -> SquareClass {
        match self.kernel {
            AnisoKernel::Plane { d, .. } => d,
            AnisoKernel::Zero | AnisoKernel::Quaternion => self.field.one(),
        }
    }

    /// Normalized Hasse invariant, read off the anisotropic kernel.
    pub fn epsilon(&self) -> Sign {
        match self.kernel {
            AnisoKernel::Zero => Sign::Plus,
            AnisoKernel::Quaternion => Sign::Minus,
            AnisoKernel::Plane { d, c } => hilbert(c, d).expect("kernel classes share the field"),
        }
    }

    /// Quasi-split iff the Witt index is at least m - 1.
    pub fn is_quasi_split(&self) -> bool {
        self.witt_index + 1 >= self.half_dim
    }

    /// The other space with the same dimension and discriminant.
    pub fn companion(&self) -> Result<OrthogonalSpace> {
        classify_space(self.field, self.half_dim, self.disc(), -self.epsilon())
    }

    /// Relabels the kernel V_(d,c) as V_(d,ac); split and quaternionic kernels are unchanged.
    pub fn iota_label(&self, a: SquareClass) -> Result<AnisoKernel> {
        Ok(match self.kernel {
            AnisoKernel::Plane { d, c } => AnisoKernel::Plane { d, c: a.try_mul(c)? },
            k => k,
        })
    }
}

impl fmt::Display for OrthogonalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kernel = match self.kernel {
            AnisoKernel::Zero => "Zero".to_string(),
            AnisoKernel::Plane { d, c } => format!("Plane({d},{c})"),
            AnisoKernel::Quaternion => "Quaternion".to_string(),
        };
        write!(
            f,
            "V(dim={}, disc={}, eps={}, witt={}, kernel={})",
            2 * self.half_dim,
            self.disc(),
            self.epsilon(),
            self.witt_index,
            kernel
        )
    }
}

/// The unique 2m-dimensional space with discriminant `d` and invariant `epsilon`.
pub fn classify_space(field: LocalField, m: u32, d: SquareClass, epsilon: Sign) -> Result<OrthogonalSpace> {
    if m == 0 {
        return Err(Error::DegenerateInput("half dimension must be positive".into()));
    }
    if d.field() != field {
        return Err(Error::FieldMismatch { left: field.p(), right: d.field().p() });
    }
    let (witt_index, kernel) = if d.is_one() {
        match epsilon {
            Sign::Plus => (m, AnisoKernel::Zero),
            Sign::Minus if m >= 2 => (m - 2, AnisoKernel::Quaternion),
            Sign::Minus => {
                return Err(Error::NonexistentSpace(format!(
                    "dim 2, square discriminant and epsilon -1 over {field}"
                )))
            }
        }
    } else {
        let c = match epsilon {
            Sign::Plus => field.one(),
            Sign::Minus => field.first_nonnorm(d).expect("a non-square d has a non-norm"),
        };
        (m - 1, AnisoKernel::Plane { d, c })
    };
    Ok(OrthogonalSpace { field, half_dim: m, witt_index, kernel })
}

/// Whittaker datum for the orthogonal family, indexed by a square class c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WhittakerDatum {
    pub c: SquareClass,
}

impl WhittakerDatum {
    pub fn new(c: SquareClass) -> Self {
        WhittakerDatum { c }
    }

    /// True iff the datum lives on O(V+) for discriminant d, i.e. (c, d) = 1.
    pub fn attaches_to_plus(&self, d: SquareClass) -> Result<bool> {
        Ok(hilbert(self.c, d)? == Sign::Plus)
    }

    /// Symplectic datum for (psi_a, c), folded to the product class ac.
    pub fn symplectic(a: SquareClass, c: SquareClass) -> Result<Self> {
        Ok(WhittakerDatum { c: a.try_mul(c)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_binary_space() {
        let f = LocalField::new(5).unwrap();
        assert!(matches!(classify_space(f, 1, f.one(), Sign::Minus), Err(Error::NonexistentSpace(_))));
    }

    #[test]
    fn quaternion_kernel() {
        let f = LocalField::new(5).unwrap();
        let v = classify_space(f, 2, f.one(), Sign::Minus).unwrap();
        assert_eq!(v.witt_index(), 0);
        assert_eq!(v.kernel(), AnisoKernel::Quaternion);
        assert!(!v.is_quasi_split());
        let plus = v.companion().unwrap();
        assert!(plus.is_quasi_split());
        assert_eq!(plus.kernel(), AnisoKernel::Zero);
    }

    #[test]
    fn anisotropic_plane() {
        let f = LocalField::new(5).unwrap();
        let five = f.class_of_int(5).unwrap();
        let v = classify_space(f, 1, five, Sign::Plus).unwrap();
        assert_eq!(v.witt_index(), 0);
        assert_eq!(v.kernel(), AnisoKernel::Plane { d: five, c: f.one() });
        let v3 = classify_space(f, 3, five, Sign::Minus).unwrap();
        assert!(v3.is_quasi_split());
        assert_eq!(v3.epsilon(), Sign::Minus);
    }

    #[test]
    fn hyperbolic_plane_has_no_partner() {
        let f = LocalField::new(3).unwrap();
        let h = classify_space(f, 1, f.one(), Sign::Plus).unwrap();
        assert!(h.is_quasi_split());
        assert!(h.companion().is_err());
    }

    #[test]
    fn whittaker_attachment() {
        let f = LocalField::new(5).unwrap();
        let five = f.class_of_int(5).unwrap();
        let two = f.class_of_int(2).unwrap();
        assert!(!WhittakerDatum::new(two).attaches_to_plus(five).unwrap());
        assert!(WhittakerDatum::new(five).attaches_to_plus(five).unwrap());
        assert_eq!(WhittakerDatum::symplectic(two, five).unwrap().c.repr(), 10);
    }
}
