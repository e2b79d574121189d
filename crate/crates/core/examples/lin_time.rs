use std::time::Instant;
use eqlarge::group::catalog::catalog;
use eqlarge::word::{linearize, parse_word, Bindings, Compiled};
fn main() {
    let v = parse_word("[[x1,x2],[x3,x1]]").unwrap();
    let l = linearize(&v, &[0, 1], &[3, 4], &[2]).unwrap();
    let g = catalog("H3").unwrap();
    let t = Instant::now();
    let cs: Vec<Compiled> = l.rhs_factors().iter().map(|w| Compiled::new(&g, w, &Bindings::new()).unwrap()).collect();
    println!("compile {:.3}s", t.elapsed().as_secs_f64());
    let t = Instant::now();
    let a = [1, 2, 3, 4, 5, 6];
    let mut acc = 0;
    for _ in 0..100 { for c in &cs { acc ^= c.eval(&g, &a); } }
    println!("eval {:.3}s {acc}", t.elapsed().as_secs_f64());
}
