//! Multidegrees: signed content vectors used to grade the plactic algebra.
//!
//! Contents of monoid elements are nonnegative, internal degrees of
//! Hochschild cochains may have negative components, so one signed type
//! serves both.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The unit vector for letter `i` (1-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Multidegree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Multidegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All multidegrees in the box `lo <= d <= hi`, in lexicographic order.
    pub fn box_iter(lo: &Multidegree, hi: &Multidegree) -> Vec<Multidegree> {
        assert_eq!(lo.len(), hi.len());
        let mut out = Vec::new();
        if lo.0.iter().zip(&hi.0).any(|(l, h)| l > h) {
            return out;
        }
        let mut cur = lo.0.clone();
        loop {
            out.push(Multidegree(cur.clone()));
            let mut k = cur.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi.0[k] {
                    cur[k] += 1;
                    for j in k + 1..cur.len() {
                        cur[j] = lo.0[j];
                    }
                    break;
                }
            }
        }
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;

    fn add(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;

    fn sub(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;

    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
