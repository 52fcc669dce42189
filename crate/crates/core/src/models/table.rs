use serde::{Deserialize, Serialize};

use super::ModelError;

/// A total table over `domain^arity`, indexed with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Table<T> {
    pub arity: usize,
    pub table: Vec<T>,
}

impl<T: Clone> Table<T> {
    pub fn constant(arity: usize, domain: usize, v: T) -> Table<T> {
        Table { arity, table: vec![v; domain.pow(arity as u32)] }
    }

    pub fn check(&self, name: &str, domain: usize) -> Result<(), ModelError> {
        let want = domain.pow(self.arity as u32);
        if self.table.len() == want {
            Ok(())
        } else {
            Err(ModelError::TableSize { symbol: name.to_string(), expected: want, found: self.table.len() })
        }
    }

    pub fn index(domain: usize, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * domain + a)
    }

    pub fn get(&self, domain: usize, args: &[usize]) -> &T {
        &self.table[Self::index(domain, args)]
    }
}

/// All argument tuples of the given arity, in table order.
pub fn tuples(domain: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..domain).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out
}
