use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// A monomial order that compares a contiguous range of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseOrder {
    Lex,
    Grlex,
    Grevlex,
}

impl BaseOrder {
    fn cmp_slice(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            BaseOrder::Lex => a.cmp(b),
            BaseOrder::Grlex => {
                let (da, db) = (degree(a), degree(b));
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            BaseOrder::Grevlex => {
                let (da, db) = (degree(a), degree(b));
                da.cmp(&db).then_with(|| {
                    // the monomial with the smaller exponent in the last
                    // differing variable is the larger one
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

/// A consecutive block of `len` variables ordered by `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub len: usize,
    pub order: BaseOrder,
}

/// Total, multiplicative monomial order over the ring's variable sequence.
///
/// Variables are ranked by their position in the [`VarSet`](super::VarSet):
/// index 0 is the largest under `Lex`. A `Block` order is the product order
/// of its blocks, compared left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "blocks", rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grlex,
    Grevlex,
    Block(Vec<Block>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::Dimension {
                expected: a.len(),
                got: b.len(),
            });
        }
        if let MonomialOrder::Block(blocks) = self {
            let total: usize = blocks.iter().map(|b| b.len).sum();
            if total != a.len() {
                return Err(Error::Dimension {
                    expected: total,
                    got: a.len(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Comparison without dimension checks; callers guarantee matching rings.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grlex => BaseOrder::Grlex.cmp_slice(a, b),
            MonomialOrder::Grevlex => BaseOrder::Grevlex.cmp_slice(a, b),
            MonomialOrder::Block(blocks) => {
                let mut start = 0;
                for blk in blocks {
                    let end = start + blk.len;
                    let c = blk.order.cmp_slice(&a[start..end], &b[start..end]);
                    if c != Ordering::Equal {
                        return c;
                    }
                    start = end;
                }
                Ordering::Equal
            }
        }
    }

    /// Whether every monomial containing one of the first `k` variables is
    /// larger than every monomial free of them, i.e. a Groebner basis under
    /// this order restricts to a basis of the `k`-th elimination ideal.
    pub fn eliminates_prefix(&self, k: usize) -> bool {
        match self {
            MonomialOrder::Lex => true,
            MonomialOrder::Grlex | MonomialOrder::Grevlex => k == 0,
            MonomialOrder::Block(blocks) => {
                if k == 0 {
                    return true;
                }
                let mut acc = 0;
                for blk in blocks {
                    acc += blk.len;
                    if acc == k {
                        return true;
                    }
                    if acc > k {
                        // split falls inside this block
                        return blk.order == BaseOrder::Lex;
                    }
                }
                false
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Grlex => f.write_str("grlex"),
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Block(blocks) => {
                f.write_str("block(")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    let name = match b.order {
                        BaseOrder::Lex => "lex",
                        BaseOrder::Grlex => "grlex",
                        BaseOrder::Grevlex => "grevlex",
                    };
                    write!(f, "{name}:{}", b.len)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn lex_compares_first_variable_first() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 5])), Ok(Ordering::Greater));
        assert_eq!(
            ord.compare(&m(&[1, 0, 0]), &m(&[0, 3, 7])),
            Ok(Ordering::Greater)
        );
        assert_eq!(ord.compare(&m(&[2, 3]), &m(&[2, 3])), Ok(Ordering::Equal));
    }

    #[test]
    fn graded_orders() {
        // x*z^2 vs y^3 in grlex / grevlex with x > y > z
        assert_eq!(MonomialOrder::Grlex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Grlex.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn mismatched_dimension_is_an_error() {
        assert!(matches!(
            MonomialOrder::Lex.compare(&m(&[1]), &m(&[1, 0])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = MonomialOrder::Block(vec![
            Block { len: 1, order: BaseOrder::Lex },
            Block { len: 2, order: BaseOrder::Grevlex },
        ]);
        assert!(ord.eliminates_prefix(1));
        assert!(!ord.eliminates_prefix(2));
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert!(!MonomialOrder::Grevlex.eliminates_prefix(1));
    }
}
