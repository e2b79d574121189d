use std::sync::Arc;

use super::{Factors, Group, Homomorphism};
use crate::error::{Error, Result};

/// Products up to this order get a materialized Cayley table; larger ones
/// multiply componentwise on demand.
pub const MATERIALIZE_BOUND: usize = 1024;

/// Largest product order accepted at all.
pub const PRODUCT_ORDER_BOUND: usize = 1 << 26;

fn product_of(groups: Vec<Arc<Group>>, label: String) -> Result<Group> {
    let needed: u128 = groups.iter().map(|f| f.order as u128).product();
    if needed > PRODUCT_ORDER_BOUND as u128 {
        return Err(Error::OrderBound { what: "product order", needed, limit: PRODUCT_ORDER_BOUND as u128 });
    }
    let order = needed as usize;
    let mut place = vec![1usize; groups.len()];
    for i in (0..groups.len().saturating_sub(1)).rev() {
        place[i] = place[i + 1] * groups[i + 1].order;
    }
    let factors = Factors { groups, place };
    let identity: usize = factors.groups.iter().zip(&factors.place).map(|(f, p)| f.identity * p).sum();
    let inverses: Vec<u32> = (0..order)
        .map(|g| {
            (0..factors.groups.len())
                .map(|i| factors.groups[i].inv(factors.coord(g, i)) * factors.place[i])
                .sum::<usize>() as u32
        })
        .collect();
    let mut group = Group { label, order, identity, inverses, names: None, table: None, factors: Some(factors) };
    if order <= MATERIALIZE_BOUND {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(group.mul(a, b) as u32);
            }
        }
        group.table = Some(table);
    }
    Ok(group)
}

/// `G × H`, element `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let label = format!("{}x{}", g.label, h.label);
    product_of(vec![Arc::new(g.clone()), Arc::new(h.clone())], label)
}

/// `G^n` with mixed-radix indices, leftmost coordinate most significant.
pub fn power(g: &Group, n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Invalid("power exponent must be positive".into()));
    }
    let label = if g.label.contains('x') { format!("({})^{n}", g.label) } else { format!("{}^{n}", g.label) };
    product_of(vec![Arc::new(g.clone()); n], label)
}

/// Projection of a product group onto coordinate `i`.
pub fn projection(p: &Group, i: usize) -> Result<Homomorphism> {
    let fs = p.factors.as_ref().ok_or_else(|| Error::Invalid(format!("{} is not a product group", p.label)))?;
    let target = fs.groups.get(i).ok_or_else(|| Error::Invalid(format!("no coordinate {i}")))?.clone();
    let map = (0..p.order).map(|g| fs.coord(g, i)).collect();
    Ok(Homomorphism::new_unchecked(Arc::new(p.clone()), target, map))
}
