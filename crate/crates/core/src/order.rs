//! Monomial orders: graded reverse lexicographic, lexicographic, and block
//! elimination orders.
//!
//! An elimination order compares the eliminated block first, so any monomial
//! involving an eliminated variable ranks above every monomial free of the
//! block. Within each block an inner order applies.

use crate::monomial::Monomial;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerOrder {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Compare exponents inside `eliminated` first, then the rest.
    Elimination {
        eliminated: u32,
        inner_elim: InnerOrder,
        inner_kept: InnerOrder,
    },
}

impl MonomialOrder {
    pub fn elimination(eliminated: u32) -> Self {
        MonomialOrder::Elimination {
            eliminated,
            inner_elim: InnerOrder::Grevlex,
            inner_kept: InnerOrder::Grevlex,
        }
    }

    /// Compare `a` and `b`; `Greater` means `a` ranks above `b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_full(a, b, nvars),
            MonomialOrder::Lex => lex_full(a, b, nvars),
            MonomialOrder::Elimination {
                eliminated,
                inner_elim,
                inner_kept,
            } => {
                let first = cmp_masked(a, b, nvars, *eliminated, *inner_elim);
                if first != Ordering::Equal {
                    return first;
                }
                cmp_masked(a, b, nvars, !*eliminated, *inner_kept)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Elimination { eliminated, .. } => {
                format!("elim({eliminated:#x})")
            }
        }
    }
}

fn grevlex_full(a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..nvars).rev() {
        let (ea, eb) = (a.exp(i), b.exp(i));
        if ea != eb {
            // Reverse lex: smaller trailing exponent ranks higher.
            return if ea < eb { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

fn lex_full(a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
    for i in 0..nvars {
        let (ea, eb) = (a.exp(i), b.exp(i));
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    Ordering::Equal
}

fn cmp_masked(a: &Monomial, b: &Monomial, nvars: usize, mask: u32, inner: InnerOrder) -> Ordering {
    match inner {
        InnerOrder::Grevlex => {
            match a.degree_masked(mask).cmp(&b.degree_masked(mask)) {
                Ordering::Equal => {}
                o => return o,
            }
            for i in (0..nvars).rev() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let (ea, eb) = (a.exp(i), b.exp(i));
                if ea != eb {
                    return if ea < eb { Ordering::Greater } else { Ordering::Less };
                }
            }
            Ordering::Equal
        }
        InnerOrder::Lex => {
            for i in 0..nvars {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let (ea, eb) = (a.exp(i), b.exp(i));
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            Ordering::Equal
        }
    }
}
