//! Dense fixed-width exponent vectors.
//!
//! Every monomial carries a full-width exponent array plus a cached total
//! degree. The width bound keeps the representation `Copy` and comparisons
//! branch-free; rings wider than [`MAX_VARS`] are rejected at construction.

pub const MAX_VARS: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exp: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exp: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exp[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[(usize, u16)]) -> Self {
        let mut m = Monomial::one();
        for &(i, e) in exps {
            m.exp[i] += e;
            m.deg += e as u32;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exp[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Total degree restricted to the variables in `mask`.
    pub fn degree_masked(&self, mask: u32) -> u32 {
        let mut d = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            d += self.exp[i] as u32;
            m &= m - 1;
        }
        d
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (i, e) in self.exp.iter().enumerate().take(MAX_VARS) {
            if *e > 0 {
                s |= 1 << i;
            }
        }
        s
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exp[i] += other.exp[i];
        }
        out.deg += other.deg;
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exp.iter().zip(other.exp.iter()).all(|(a, b)| a <= b)
    }

    /// Quotient `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            debug_assert!(out.exp[i] >= self.exp[i]);
            out.exp[i] -= self.exp[i];
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        let mut d = 0u32;
        for i in 0..MAX_VARS {
            let e = self.exp[i].max(other.exp[i]);
            out.exp[i] = e;
            d += e as u32;
        }
        out.deg = d;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exp
            .iter()
            .zip(other.exp.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Raw exponent array, used as a deterministic tie-break key.
    pub fn raw(&self) -> [u16; MAX_VARS] {
        self.exp
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m[")?;
        let mut first = true;
        for (i, e) in self.exp.iter().enumerate() {
            if *e > 0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}^{e}")?;
                first = false;
            }
        }
        write!(f, "]")
    }
}
