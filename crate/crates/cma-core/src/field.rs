//! Arithmetic in the prime field `F_p`.
//!
//! Elements are carried as bare `u32` residues in `0..p`; the modulus lives in
//! [`Fp`] and is threaded through every operation. The default modulus is
//! 32003.

pub const DEFAULT_CHAR: u32 = 32003;

/// A prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2 && p < (1 << 31), "characteristic out of range");
        assert!(is_prime(p), "characteristic {p} is not prime");
        Fp { p }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        let m = self.p as i64;
        (((v % m) + m) % m) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero in F_p");
        self.pow(a, self.p as u64 - 2)
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_exactly() {
        let f = Fp::new(DEFAULT_CHAR);
        // a * a^{-1} = 1 for a != 0, on a deterministic sample
        for a in [1u32, 2, 3, 17, 31999, 32002, 12345] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        // distributivity on a sample grid
        for &a in &[0u32, 1, 5, 32002] {
            for &b in &[0u32, 2, 77, 31000] {
                for &c in &[1u32, 3, 9999] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn reduce_negative() {
        let f = Fp::new(7);
        assert_eq!(f.reduce_i64(-1), 6);
        assert_eq!(f.reduce_i64(-15), 6);
        assert_eq!(f.reduce_i64(14), 0);
    }

    #[test]
    #[should_panic]
    fn rejects_composite_characteristic() {
        Fp::new(32001);
    }
}
