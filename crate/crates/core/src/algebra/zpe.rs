//! Arithmetic in `Z/p^e` for an odd prime `p`.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// The coefficient ring `Z/p^e`. Residues are stored as `u32` in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ZpeRepr", into = "ZpeRepr")]
pub struct Zpe {
    p: u32,
    e: u32,
    q: u32,
}

#[derive(Serialize, Deserialize)]
struct ZpeRepr {
    p: u32,
    e: u32,
}

impl TryFrom<ZpeRepr> for Zpe {
    type Error = AlgebraError;
    fn try_from(r: ZpeRepr) -> Result<Self, Self::Error> {
        Zpe::new(r.p, r.e)
    }
}

impl From<Zpe> for ZpeRepr {
    fn from(z: Zpe) -> Self {
        ZpeRepr { p: z.p, e: z.e }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Zpe {
    /// Largest modulus allowed; keeps every product of two residues inside `u32`.
    pub const MAX_MODULUS: u32 = 1 << 16;

    pub fn new(p: u32, e: u32) -> Result<Self, AlgebraError> {
        if p == 2 {
            return Err(AlgebraError::EvenPrime);
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if e == 0 {
            return Err(AlgebraError::BadExponent);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q *= p as u64;
            if q > Self::MAX_MODULUS as u64 {
                return Err(AlgebraError::ModulusTooLarge);
            }
        }
        Ok(Zpe { p, e, q: q as u32 })
    }

    /// The prime field `F_p`.
    pub fn field(p: u32) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }
    /// The modulus `p^e`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    #[inline]
    pub fn is_field(&self) -> bool {
        self.e == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    /// Reduce an arbitrary signed integer.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(&self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1
        } else {
            self.q - 1
        }
    }

    pub fn pow(&self, mut a: u32, mut k: u64) -> u32 {
        let mut r = 1 % self.q;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }

    /// `p^k` as a residue (zero once `k >= e`).
    pub fn p_pow(&self, k: u32) -> u32 {
        if k >= self.e {
            0
        } else {
            self.p.pow(k)
        }
    }

    /// The `p`-adic valuation, with `valuation(0) == e`.
    #[inline]
    pub fn valuation(&self, mut a: u32) -> u32 {
        if a == 0 {
            return self.e;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn is_unit(&self, a: u32) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut old_r, mut r) = (a as i64, self.q as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let quo = old_r / r;
            (old_r, r) = (r, old_r - quo * r);
            (old_s, s) = (s, old_s - quo * s);
        }
        Some(self.from_i64(old_s))
    }

    /// Exact division `a / p^k`, assuming `valuation(a) >= k`. The result is
    /// only determined modulo `p^(e-k)`; the canonical representative in
    /// `0..p^(e-k)` is returned.
    #[inline]
    pub fn div_p_pow(&self, a: u32, k: u32) -> u32 {
        debug_assert!(self.valuation(a) >= k);
        if k == 0 {
            a
        } else {
            a / self.p.pow(k)
        }
    }

    /// Write a nonzero `a` as `p^v * u` and return `(v, u^{-1})`.
    pub fn split_unit(&self, a: u32) -> (u32, u32) {
        let v = self.valuation(a);
        let mut u = a;
        for _ in 0..v {
            u /= self.p;
        }
        // u is a unit modulo p^(e-v); any lift is a unit modulo q.
        (v, self.inv(u).expect("unit part is invertible"))
    }

    /// Reduction modulo `p`.
    #[inline]
    pub fn residue(&self, a: u32) -> u32 {
        a % self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(Zpe::new(2, 1), Err(AlgebraError::EvenPrime));
        assert_eq!(Zpe::new(9, 1), Err(AlgebraError::NotPrime(9)));
        assert!(Zpe::new(3, 11).is_err());
    }

    #[test]
    fn inverses_mod_27() {
        let z = Zpe::new(3, 3).unwrap();
        for a in 0..27 {
            match z.inv(a) {
                Some(b) => assert_eq!(z.mul(a, b), 1),
                None => assert_eq!(a % 3, 0),
            }
        }
    }

    #[test]
    fn valuation_and_split() {
        let z = Zpe::new(5, 3).unwrap();
        assert_eq!(z.valuation(0), 3);
        assert_eq!(z.valuation(50), 2);
        let (v, uinv) = z.split_unit(50);
        assert_eq!(v, 2);
        assert_eq!(z.mul(50, uinv), 25);
    }
}
