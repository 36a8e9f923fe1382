use super::OracleError;

/// Element of a small finite field, stored as its index `sum c_i p^i` where
/// `c_i` are the coordinates in the power basis of the defining modulus.
pub type Elem = u16;

/// `F_{p^e}` with full addition and multiplication tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

// Monic moduli, ascending coefficients without the leading 1.
fn modulus_table(p: u32, e: u32) -> Option<Vec<u32>> {
    let low: &[u32] = match (p, e) {
        (_, 1) => &[0],
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (3, 2) => &[1, 0],
        (3, 3) => &[1, 2, 0],
        (5, 2) => &[2, 0],
        (5, 3) => &[1, 1, 0],
        (7, 2) => &[1, 0],
        (7, 3) => &[1, 1, 0],
        _ => return None,
    };
    let mut m = low.to_vec();
    m.push(1);
    Some(m)
}

/// Remainder of `a` modulo monic `b` over `F_p`; ascending coefficients.
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &c) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducible over `F_p` iff no monic polynomial of degree `1..=deg/2` divides it.
fn is_irreducible_fp(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand: Vec<u32> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
            cand.push(1);
            if fp_rem(m, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^e}` for `p in {2,3,5,7}` and `e <= 3`.
    pub fn new(p: u32, e: u32) -> Result<Self, OracleError> {
        if ![2, 3, 5, 7].contains(&p) || !(1..=3).contains(&e) {
            return Err(OracleError::UnsupportedField { p, e });
        }
        let modulus = modulus_table(p, e).ok_or(OracleError::UnsupportedField { p, e })?;
        assert!(
            is_irreducible_fp(&modulus, p),
            "table modulus must be irreducible"
        );
        let q = p.pow(e) as usize;
        let digits = |x: usize| -> Vec<u32> {
            (0..e)
                .map(|i| ((x / (p as usize).pow(i)) % p as usize) as u32)
                .collect()
        };
        let index = |d: &[u32]| -> Elem {
            d.iter()
                .enumerate()
                .map(|(i, &c)| c as usize * (p as usize).pow(i as u32))
                .sum::<usize>() as Elem
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = fp_rem(&prod, &modulus, p);
                red.resize(e as usize, 0);
                mul[a * q + b] = index(&red);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as Elem;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as Elem;
                }
            }
        }
        Ok(FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    /// Field with `q` elements.
    pub fn with_order(q: u64) -> Result<Self, OracleError> {
        let (p, e) = prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Monic modulus over `F_p`, ascending.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Smallest element generating the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        (1..self.q as Elem)
            .find(|&a| self.mult_order(a) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// The elements `1, x, ..., x^{e-1}`: a basis over `F_p`.
    pub fn power_basis(&self) -> Vec<Elem> {
        (0..self.e)
            .map(|i| (self.p as usize).pow(i) as Elem)
            .collect()
    }
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}
