//! Tangent vectors and covectors.
//!
//! Minkowski norms are translation invariant, so neither type carries a base point.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, Mul, Neg, Sub};

macro_rules! component_type {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
        pub struct $name(pub Vec<f64>);

        impl $name {
            pub fn new(c: Vec<f64>) -> Self {
                Self(c)
            }

            pub fn zeros(n: usize) -> Self {
                Self(vec![0.0; n])
            }

            /// Unit coordinate direction `e_i` (zero-based index).
            pub fn basis(n: usize, i: usize) -> Self {
                let mut c = vec![0.0; n];
                c[i] = 1.0;
                Self(c)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.0
            }

            pub fn euclidean(&self) -> f64 {
                euclid(&self.0)
            }

            pub fn last(&self) -> f64 {
                *self.0.last().expect("empty vector")
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0.0)
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            pub fn scale(&self, s: f64) -> Self {
                Self(self.0.iter().map(|c| c * s).collect())
            }

            pub fn axpy(&self, s: f64, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
            }

            pub fn dot(&self, other: &Self) -> f64 {
                dot(&self.0, &other.0)
            }
        }

        impl Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<f64> for &$name {
            type Output = $name;
            fn mul(self, s: f64) -> $name {
                self.scale(s)
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(c: Vec<f64>) -> Self {
                Self(c)
            }
        }
    };
}

component_type!(Vector);
component_type!(Covector);

impl Covector {
    /// The natural pairing `<xi, y>`.
    pub fn pair(&self, y: &Vector) -> f64 {
        dot(&self.0, &y.0)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn euclid(a: &[f64]) -> f64 {
    let s: f64 = a.iter().map(|c| c * c).sum();
    if s.is_finite() && s > 1e-280 {
        return s.sqrt();
    }
    // rescale only when the plain sum would overflow or underflow
    let m = a.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let s: f64 = a.iter().map(|c| (c / m) * (c / m)).sum();
    m * s.sqrt()
}
