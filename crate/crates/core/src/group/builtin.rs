use std::fmt;
use std::str::FromStr;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Named families of groups with fixed element orders.
///
/// * `Cyclic(n)`: element `i` is `r^i`.
/// * `Dihedral(n)`: symmetries of an n-gon (order `2n`); element `i < n` is
///   `r^i`, element `n + i` is `r^i s`.
/// * `Symmetric(n)`, `Alternating(n)`: permutations of `0..n` in
///   lexicographic one-line order.
/// * `Dicyclic(n)`: order `4n`, element `i + 2n j` is `a^i x^j` with
///   `a^(2n) = 1`, `x^2 = a^n`, `x a x^-1 = a^-1`. `Quaternion8` is `Dicyclic(2)`.
/// * `Klein4`: `C2 x C2` with `(a, b)` numbered `2a + b`.
/// * `Product(a, b)`: direct product, `(x, y)` numbered `x |b| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Dicyclic(usize),
    Quaternion8,
    Klein4,
    Product(Box<Builtin>, Box<Builtin>),
}

const MAX_CYCLIC: usize = 24;
const MAX_SYMMETRIC: usize = 5;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimitExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

impl Builtin {
    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.to_string();
        match *self {
            Builtin::Cyclic(n) => {
                guard("cyclic group order", n, MAX_CYCLIC)?;
                if n == 0 {
                    return Err(Error::InvalidInput("cyclic group of order 0".into()));
                }
                Ok(table_group(n, name, |a, b| (a + b) % n))
            }
            Builtin::Dihedral(n) => {
                guard("dihedral group degree", n, MAX_CYCLIC)?;
                if n == 0 {
                    return Err(Error::InvalidInput("dihedral group of degree 0".into()));
                }
                Ok(table_group(2 * n, name, |a, b| {
                    let (ra, sa) = (a % n, a / n);
                    let (rb, sb) = (b % n, b / n);
                    let r = if sa == 0 { ra + rb } else { ra + n - rb } % n;
                    r + n * ((sa + sb) % 2)
                }))
            }
            Builtin::Dicyclic(n) => {
                guard("dicyclic group parameter", n, MAX_CYCLIC / 4)?;
                if n == 0 {
                    return Err(Error::InvalidInput("dicyclic group with n = 0".into()));
                }
                let m = 2 * n;
                Ok(table_group(4 * n, name, |a, b| {
                    let (ia, ja) = (a % m, a / m);
                    let (ib, jb) = (b % m, b / m);
                    let mut i = if ja == 0 { ia + ib } else { ia + m - ib };
                    if ja == 1 && jb == 1 {
                        i += n;
                    }
                    i % m + m * ((ja + jb) % 2)
                }))
            }
            Builtin::Quaternion8 => Ok(Builtin::Dicyclic(2).build()?.with_name(name)),
            Builtin::Klein4 => Ok(table_group(4, name, |a, b| a ^ b)),
            Builtin::Symmetric(n) => {
                guard("symmetric group degree", n, MAX_SYMMETRIC)?;
                Ok(FiniteGroup::symmetric_group(n)?.with_name(name))
            }
            Builtin::Alternating(n) => {
                guard("alternating group degree", n, MAX_SYMMETRIC)?;
                let perms: Vec<Vec<usize>> = super::lex_permutations(n)
                    .into_iter()
                    .filter(|p| is_even(p))
                    .collect();
                let index = perms
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, p)| (p, i))
                    .collect();
                Ok(FiniteGroup::from_permutation_list(perms, index, name))
            }
            Builtin::Product(ref a, ref b) => {
                let (a, b) = (a.build()?, b.build()?);
                guard("product group order", a.order() * b.order(), 48)?;
                Ok(FiniteGroup::direct_product(&a, &b).with_name(name))
            }
        }
    }
}

fn table_group(order: usize, name: String, law: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = law(a, b) as u32;
        }
    }
    FiniteGroup::from_trusted_table(mul, order, name)
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Cyclic(1) => write!(f, "trivial"),
            Builtin::Cyclic(n) => write!(f, "C{n}"),
            Builtin::Dihedral(n) => write!(f, "D{n}"),
            Builtin::Symmetric(n) => write!(f, "S{n}"),
            Builtin::Alternating(n) => write!(f, "A{n}"),
            Builtin::Dicyclic(n) => write!(f, "Dic{n}"),
            Builtin::Quaternion8 => write!(f, "Q8"),
            Builtin::Klein4 => write!(f, "V4"),
            Builtin::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `trivial`, `C<n>`, `D<n>`, `S<n>`, `A<n>`, `Dic<n>`, `Q8`,
    /// `V4` and `x`-separated products such as `C2xC4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('x') {
            return Ok(Builtin::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let bad = || Error::InvalidInput(format!("unknown group name '{s}'"));
        let num = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        match s {
            "trivial" | "1" | "C1" => Ok(Builtin::Cyclic(1)),
            "Q8" => Ok(Builtin::Quaternion8),
            "V4" | "K4" | "klein4" => Ok(Builtin::Klein4),
            "quaternion8" => Ok(Builtin::Quaternion8),
            _ => {
                if let Some(rest) = s.strip_prefix("Dic") {
                    Ok(Builtin::Dicyclic(num(rest)?))
                } else if let Some(rest) = s.strip_prefix('C') {
                    Ok(Builtin::Cyclic(num(rest)?))
                } else if let Some(rest) = s.strip_prefix('D') {
                    Ok(Builtin::Dihedral(num(rest)?))
                } else if let Some(rest) = s.strip_prefix('S') {
                    Ok(Builtin::Symmetric(num(rest)?))
                } else if let Some(rest) = s.strip_prefix('A') {
                    Ok(Builtin::Alternating(num(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}
