use std::cmp::Ordering;

/// Exponent vector; its length is the number of ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Variables flagged `true` form the first (eliminated) block; each
    /// block is compared by degree-reverse-lexicographic order.
    Block(Vec<bool>),
}

fn grevlex(a: &[u32], b: &[u32], mask: Option<(&[bool], bool)>) -> Ordering {
    let pick = |i: usize| mask.is_none_or(|(m, side)| m[i] == side);
    let da: u32 = a.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, e)| e).sum();
    let db: u32 = b.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, e)| e).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if pick(i) && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => grevlex(&a.0, &b.0, None),
            MonomialOrder::Block(mask) => grevlex(&a.0, &b.0, Some((mask, true)))
                .then_with(|| grevlex(&a.0, &b.0, Some((mask, false)))),
        }
    }

    /// Block order eliminating the variables at `drop` among `n`.
    pub fn eliminating(n: usize, drop: &[usize]) -> Self {
        let mut mask = vec![false; n];
        for &i in drop {
            mask[i] = true;
        }
        MonomialOrder::Block(mask)
    }
}
