//! Named group families and the group-spec mini-language.
//!
//! ```text
//! C<n>      cyclic of order n
//! D<n>      dihedral of order 2n (symmetries of the n-gon, so D4 has order 8)
//! S<n>      symmetric on n ≤ 6 points
//! A<n>      alternating on n ≤ 6 points
//! Q8        quaternion group
//! E<p>^<k>  elementary abelian of order p^k
//! H<p>      Heisenberg group mod p (order p^3), p ∈ {2, 3, 5}
//! AxB       direct product, e.g. C2xC4
//! @<path>   Cayley-table JSON file
//! perm:<d>:<cycles>[;<cycles>…]   permutation group, 1-based points
//! ```

use serde::{Deserialize, Serialize};

use super::perm::{self, parse_cycles};
use super::{direct_product, Group};
use crate::error::{Error, Result};

/// Largest order for a family instance built from a numeric parameter.
pub const FAMILY_ORDER_BOUND: usize = 4096;

/// The documented catalog in canonical order (by order, then listing order).
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "E2^3", "D4", "Q8", "C9",
    "E3^2", "C10", "D5", "C11", "C12", "C2xC6", "D6", "A4", "C13", "C14", "D7", "C15", "C16", "C4xC4",
    "C2xC8", "C2xC2xC4", "E2^4", "D8", "C2xD4", "C2xQ8", "C17", "C18", "C3xC6", "D9", "C3xS3", "C19",
    "C20", "C2xC10", "D10", "C21", "C22", "D11", "C23", "C24", "C2xC12", "C2xC2xC6", "S4", "D12",
    "C2xA4", "C3xD4", "C3xQ8", "C2xD6",
];

/// Catalog specs whose group order is at most `max_order`.
pub fn catalog_specs(max_order: usize) -> Vec<&'static str> {
    CATALOG.iter().copied().filter(|s| spec_order(s).is_some_and(|o| o <= max_order)).collect()
}

/// All catalog groups of order at most `max_order`, in canonical order.
pub fn catalog_upto(max_order: usize) -> Vec<Group> {
    catalog_specs(max_order).into_iter().map(|s| catalog(s).expect("catalog entries are valid")).collect()
}

/// Order of a group spec without building the group (catalog families only).
pub fn spec_order(spec: &str) -> Option<usize> {
    if spec.starts_with('@') || spec.starts_with("perm:") {
        return None;
    }
    spec.split('x').try_fold(1usize, |acc, part| Some(acc * family_order(part)?))
}

fn family_order(part: &str) -> Option<usize> {
    let num = |s: &str| s.parse::<usize>().ok();
    let fact = |n: usize| (1..=n).product::<usize>();
    match part.split_at(part.len().min(1)) {
        ("Q", "8") => Some(8),
        ("C", n) => num(n),
        ("D", n) => num(n).map(|n| 2 * n),
        ("S", n) => num(n).map(fact),
        ("A", n) => num(n).map(|n| (fact(n) / 2).max(1)),
        ("H", p) => num(p).map(|p| p * p * p),
        ("E", pk) => {
            let (p, k) = pk.split_once('^')?;
            Some(num(p)?.pow(num(k)? as u32))
        }
        _ => None,
    }
}

fn unknown(spec: &str) -> Error {
    let suggestion = suggest(spec);
    Error::UnknownSpec { spec: spec.into(), suggestion }
}

fn suggest(spec: &str) -> Option<String> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix('Z').or_else(|| s.strip_prefix("Cyc")) {
        if rest.parse::<usize>().is_ok() {
            return Some(format!("C{rest}"));
        }
    }
    if let Some(rest) = s.strip_prefix("Dih") {
        if let Ok(n) = rest.parse::<usize>() {
            return Some(format!("D{}", (n / 2).max(1)));
        }
    }
    if s.eq_ignore_ascii_case("q8") || s == "Q" {
        return Some("Q8".into());
    }
    if let Some(rest) = s.strip_prefix("V") {
        if rest == "4" || rest.is_empty() {
            return Some("C2xC2".into());
        }
    }
    let up = s.to_ascii_uppercase();
    (up != s && family_order(&up).is_some()).then_some(up)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_order(n: usize) -> Result<()> {
    if n > FAMILY_ORDER_BOUND {
        return Err(Error::OrderBound { what: "catalog group order", needed: n as u128, limit: FAMILY_ORDER_BOUND as u128 });
    }
    Ok(())
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(unknown("C0"));
    }
    check_order(n)?;
    let names = (0..n).map(|i| match i {
        0 => "e".to_string(),
        1 => "a".to_string(),
        _ => format!("a{i}"),
    });
    Ok(Group::from_fn(n, Some(names.collect()), format!("C{n}"), |a, b| (a + b) % n))
}

/// Dihedral group of order `2n`; element `r^i s^j` at index `j·n + i`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(unknown("D0"));
    }
    check_order(2 * n)?;
    let names = (0..2 * n)
        .map(|g| {
            let (i, j) = (g % n, g / n);
            let r = match i {
                0 => String::new(),
                1 => "r".into(),
                _ => format!("r{i}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "e".into(),
                (_, 0) => r,
                _ => format!("{r}s"),
            }
        })
        .collect();
    // (r^i s^a)(r^j s^b) = r^(i + (-1)^a j) s^(a+b)
    Ok(Group::from_fn(2 * n, Some(names), format!("D{n}"), |x, y| {
        let (i, a, j, b) = (x % n, x / n, y % n, y / n);
        let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
        ((a + b) % 2) * n + k
    }))
}

/// Quaternion group {±1, ±i, ±j, ±k}.
pub fn quaternion() -> Group {
    let names = ["e", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    // unit u ∈ {1,i,j,k} = 0..4, element index 2u + sign
    let unit_mul = |u: usize, v: usize| -> (usize, bool) {
        match (u, v) {
            (0, v) => (v, false),
            (u, 0) => (u, false),
            (u, v) if u == v => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    Group::from_fn(8, Some(names), "Q8", |x, y| {
        let (w, neg) = unit_mul(x / 2, y / 2);
        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
        2 * w + sign
    })
}

/// Elementary abelian group `(Z/p)^k` with mixed-radix vector indices.
pub fn elementary(p: usize, k: usize) -> Result<Group> {
    if !is_prime(p) || k == 0 {
        return Err(unknown(&format!("E{p}^{k}")));
    }
    let n = p.checked_pow(k as u32).filter(|&n| n <= FAMILY_ORDER_BOUND).ok_or(Error::OrderBound {
        what: "catalog group order",
        needed: (p as u128).saturating_pow(k as u32),
        limit: FAMILY_ORDER_BOUND as u128,
    })?;
    let digits = |mut g: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = g % p;
            g /= p;
        }
        d
    };
    let names = (0..n)
        .map(|g| if g == 0 { "e".into() } else { format!("v{}", digits(g).iter().map(|d| d.to_string()).collect::<String>()) })
        .collect();
    Ok(Group::from_fn(n, Some(names), format!("E{p}^{k}"), |a, b| {
        let (da, db) = (digits(a), digits(b));
        da.iter().zip(&db).fold(0, |acc, (x, y)| acc * p + (x + y) % p)
    }))
}

/// Upper unitriangular 3×3 matrices over `Z/p`: `(a, b, c)` at `a·p² + b·p + c`.
pub fn heisenberg(p: usize) -> Result<Group> {
    if !is_prime(p) || p > 5 {
        return Err(unknown(&format!("H{p}")));
    }
    let n = p * p * p;
    let split = |g: usize| (g / (p * p), (g / p) % p, g % p);
    let names = (0..n)
        .map(|g| {
            let (a, b, c) = split(g);
            if g == 0 { "e".into() } else { format!("h{a}{b}{c}") }
        })
        .collect();
    Ok(Group::from_fn(n, Some(names), format!("H{p}"), |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    }))
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 || n > 6 {
        return Err(unknown(&format!("S{n}")));
    }
    let mut gens = vec![];
    if n >= 2 {
        gens.push(parse_cycles(n, &format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))?);
        gens.push(parse_cycles(n, "(1 2)")?);
    }
    let elems = perm::closure(n, &gens, usize::MAX)?;
    Ok(perm::group_from_elements(&elems, format!("S{n}"), None))
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 || n > 6 {
        return Err(unknown(&format!("A{n}")));
    }
    let gens = (3..=n).map(|k| parse_cycles(n, &format!("(1 2 {k})"))).collect::<Result<Vec<_>>>()?;
    let elems = perm::closure(n, &gens, usize::MAX)?;
    Ok(perm::group_from_elements(&elems, format!("A{n}"), None))
}

/// On-disk Cayley table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default)]
    pub label: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TableFile {
    pub fn from_group(g: &Group) -> TableFile {
        TableFile {
            label: Some(g.label().to_string()),
            order: g.order(),
            table: g.table(),
            names: Some((0..g.order()).map(|i| g.name(i)).collect()),
        }
    }

    pub fn into_group(self) -> Result<Group> {
        if self.order != self.table.len() {
            return Err(Error::Invalid(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        let g = Group::from_cayley_table(&self.table, self.names)?;
        Ok(match self.label {
            Some(l) => g.with_label(l),
            None => g,
        })
    }
}

pub fn load_table_file(path: &str) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    let file: TableFile = serde_json::from_str(&text)?;
    file.into_group()
}

fn family(part: &str) -> Result<Group> {
    let bad = || unknown(part);
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if part == "Q8" {
        return Ok(quaternion());
    }
    let (head, rest) = part.split_at(part.len().min(1));
    match head {
        "C" => cyclic(num(rest)?),
        "D" => dihedral(num(rest)?),
        "S" => symmetric(num(rest)?),
        "A" => alternating(num(rest)?),
        "H" => heisenberg(num(rest)?),
        "E" => {
            let (p, k) = rest.split_once('^').ok_or_else(bad)?;
            elementary(num(p)?, num(k)?)
        }
        _ => Err(bad()),
    }
}

/// Build a group from a spec string (see module docs).
pub fn catalog(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        return load_table_file(path);
    }
    if spec.starts_with("perm:") {
        return perm::parse_perm_spec(spec);
    }
    if spec.is_empty() {
        return Err(unknown(spec));
    }
    let mut parts = spec.split('x');
    let mut g = family(parts.next().unwrap())?;
    for p in parts {
        let h = family(p)?;
        g = direct_product(&g, &h)?;
    }
    Ok(g.with_label(spec))
}
