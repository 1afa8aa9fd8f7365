//! The classical models PG(3,q) over prime fields.
//!
//! Points and planes are both normalized nonzero 4-vectors, listed in
//! lexicographic order of coordinates (`coords[0]` most significant). A point
//! and a plane are incident when their dot product vanishes mod q. For q = 2
//! this ordering coincides with the binary encoding `1..=15`, so point index
//! `i` and plane index `j` are incident iff `popcount((i+1) & (j+1))` is even.

use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;

/// Default ceiling on q for [`generate_pg3`].
pub const DEFAULT_MAX_Q: u32 = 7;

/// The field of integers mod a prime q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(self) -> u32 {
        self.q
    }

    pub fn reduce(self, x: u64) -> u32 {
        (x % u64::from(self.q)) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) + u64::from(b))
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) * u64::from(b))
    }

    /// Multiplicative inverse via Fermat's little theorem; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = self.reduce(u64::from(a));
        if a == 0 {
            return None;
        }
        let mut result = 1u32;
        let mut base = a;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Some(result)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2u32..)
        .take_while(|d| u64::from(*d) * u64::from(*d) <= u64::from(n))
        .all(|d| !n.is_multiple_of(d))
}

/// A homogeneous 4-vector whose first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjVector {
    coords: [u32; 4],
}

impl ProjVector {
    pub fn coords(&self) -> [u32; 4] {
        self.coords
    }

    /// Dot product mod q.
    pub fn pair(&self, other: &ProjVector, field: PrimeField) -> u32 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .fold(0, |acc, (a, b)| field.add(acc, field.mul(*a, *b)))
    }
}

impl fmt::Display for ProjVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Scales `raw` so that its first nonzero coordinate is 1.
pub fn normalize(raw: [u32; 4], field: PrimeField) -> Result<ProjVector> {
    let reduced = raw.map(|x| field.reduce(u64::from(x)));
    let lead = reduced
        .iter()
        .copied()
        .find(|&x| x != 0)
        .ok_or(Error::Degenerate("zero vector has no projective point"))?;
    // lead is nonzero mod a prime, so the inverse exists
    let scale = field.inv(lead).expect("nonzero element is invertible");
    Ok(ProjVector {
        coords: reduced.map(|x| field.mul(x, scale)),
    })
}

/// All normalized nonzero vectors over GF(q), in lexicographic order.
pub fn projective_vectors(field: PrimeField) -> Vec<ProjVector> {
    let q = field.order();
    // lead position k: coords[..k] = 0, coords[k] = 1, the rest free
    let mut all = Vec::new();
    for k in 0..4 {
        let free = 3 - k;
        for n in 0..q.pow(free as u32) {
            let mut coords = [0u32; 4];
            coords[k] = 1;
            let mut rest = n;
            for slot in (k + 1..4).rev() {
                coords[slot] = rest % q;
                rest /= q;
            }
            all.push(ProjVector { coords });
        }
    }
    all.sort();
    all
}

/// PG(3,q) with the default bound on q.
pub fn generate_pg3(q: u32) -> Result<IncidenceStructure> {
    generate_pg3_bounded(q, DEFAULT_MAX_Q)
}

/// PG(3,q), refusing `q > max_q`.
pub fn generate_pg3_bounded(q: u32, max_q: u32) -> Result<IncidenceStructure> {
    let field = PrimeField::new(q)?;
    if q > max_q {
        return Err(Error::FieldTooLarge { q, bound: max_q });
    }
    let vectors = projective_vectors(field);
    let n = vectors.len();
    Ok(IncidenceStructure::from_fn(n, n, |p, h| {
        vectors[p].pair(&vectors[h], field) == 0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{PlaneId, PointId};

    #[test]
    fn primality() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn normalize_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(normalize([2, 1, 0, 2], f3).unwrap().coords(), [1, 2, 0, 1]);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(normalize([0, 0, 3, 1], f5).unwrap().coords(), [0, 0, 1, 2]);
        let f2 = PrimeField::new(2).unwrap();
        for n in 1u32..16 {
            let v = [n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1];
            assert_eq!(normalize(v, f2).unwrap().coords(), v);
        }
        assert!(matches!(
            normalize([0, 0, 0, 0], f5),
            Err(Error::Degenerate(_))
        ));
        assert!(normalize([3, 0, 0, 3], f3).is_err());
    }

    #[test]
    fn vector_counts() {
        for q in [2u32, 3, 5, 7] {
            let f = PrimeField::new(q).unwrap();
            let vs = projective_vectors(f);
            assert_eq!(vs.len() as u32, q * q * q + q * q + q + 1);
            assert!(vs.windows(2).all(|w| w[0] < w[1]));
            for v in &vs {
                assert_eq!(normalize(v.coords(), f).unwrap(), *v);
            }
        }
    }

    #[test]
    fn pg32_is_the_and_parity_encoding() {
        let s = generate_pg3(2).unwrap();
        assert_eq!((s.n_points(), s.n_planes()), (15, 15));
        for i in 0..15usize {
            for j in 0..15 {
                let parity_even = ((i + 1) & (j + 1)).count_ones().is_multiple_of(2);
                assert_eq!(s.incident(PointId(i), PlaneId(j)).unwrap(), parity_even);
            }
        }
    }

    #[test]
    fn generate_counts() {
        let s = generate_pg3(2).unwrap();
        for i in 0..15 {
            assert_eq!(s.planes_through(PointId(i)).unwrap().len(), 7);
            assert_eq!(s.points_on(PlaneId(i)).unwrap().len(), 7);
        }
        let s = generate_pg3(3).unwrap();
        assert_eq!((s.n_points(), s.n_planes()), (40, 40));
    }

    #[test]
    fn generate_errors() {
        assert_eq!(generate_pg3(4), Err(Error::NotPrime(4)));
        assert_eq!(
            generate_pg3(11),
            Err(Error::FieldTooLarge { q: 11, bound: 7 })
        );
        assert!(generate_pg3_bounded(11, 11).is_ok());
    }
}
