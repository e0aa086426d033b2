//! Computable discrete groups.

use std::fmt::Debug;
use std::hash::Hash;

/// A group given by its operations. Finite groups also enumerate their
/// elements in a fixed canonical order.
pub trait Group: Send + Sync {
    type Elem: Clone + Ord + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// A finite sample of elements; the whole group when finite.
    fn window(&self, radius: u32) -> Vec<Self::Elem> {
        let _ = radius;
        self.elements().expect("infinite groups must override window")
    }
    fn label(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    fn is_finite(&self) -> bool {
        self.elements().is_some()
    }
}

/// Whether `subset` is closed under products and inverses and contains 1.
pub fn is_subgroup<G: Group>(g: &G, subset: &[G::Elem]) -> bool {
    if !subset.contains(&g.identity()) {
        return false;
    }
    subset.iter().all(|a| {
        subset.contains(&g.inv(a)) && subset.iter().all(|b| subset.contains(&g.op(a, b)))
    })
}

/// ℤ/n, written additively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclic {
    n: u32,
}

impl Cyclic {
    pub fn new(n: u32) -> Cyclic {
        assert!(n > 0, "cyclic group of order 0");
        Cyclic { n }
    }
}

impl Group for Cyclic {
    type Elem = u32;

    fn name(&self) -> String {
        format!("Z/{}", self.n)
    }
    fn identity(&self) -> u32 {
        0
    }
    fn op(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.n
    }
    fn inv(&self, a: &u32) -> u32 {
        (self.n - a) % self.n
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.n).collect())
    }
    fn label(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u32> {
        let v: i64 = s.trim().parse().ok()?;
        Some(v.rem_euclid(self.n as i64) as u32)
    }
}

/// The symmetric group on three letters; an element is the word of images
/// `[σ(0), σ(1), σ(2)]`, composed as `(στ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symmetric3;

impl Group for Symmetric3 {
    type Elem = [u8; 3];

    fn name(&self) -> String {
        "S3".to_string()
    }
    fn identity(&self) -> [u8; 3] {
        [0, 1, 2]
    }
    fn op(&self, a: &[u8; 3], b: &[u8; 3]) -> [u8; 3] {
        [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
    }
    fn inv(&self, a: &[u8; 3]) -> [u8; 3] {
        let mut out = [0u8; 3];
        for (i, &v) in a.iter().enumerate() {
            out[v as usize] = i as u8;
        }
        out
    }
    fn elements(&self) -> Option<Vec<[u8; 3]>> {
        Some(vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]])
    }
    fn label(&self, a: &[u8; 3]) -> String {
        a.iter().map(|d| d.to_string()).collect()
    }
    fn parse(&self, s: &str) -> Option<[u8; 3]> {
        let digits: Vec<u8> = s.trim().bytes().map(|b| b.wrapping_sub(b'0')).collect();
        let word: [u8; 3] = digits.try_into().ok()?;
        let mut sorted = word;
        sorted.sort();
        (sorted == [0, 1, 2]).then_some(word)
    }
}

/// The integers under addition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;

    fn name(&self) -> String {
        "Z".to_string()
    }
    fn identity(&self) -> i64 {
        0
    }
    fn op(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inv(&self, a: &i64) -> i64 {
        -a
    }
    fn elements(&self) -> Option<Vec<i64>> {
        None
    }
    fn window(&self, radius: u32) -> Vec<i64> {
        let r = radius as i64;
        (-r..=r).collect()
    }
    fn label(&self, a: &i64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<i64> {
        s.trim().parse().ok()
    }
}

/// A finite group copied into a multiplication table; elements are indices
/// into the canonical order of the source group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl TableGroup {
    pub fn of<G: Group>(g: &G) -> Option<TableGroup> {
        let elems = g.elements()?;
        let idx = |a: &G::Elem| elems.iter().position(|e| e == a).expect("closed under the operation");
        Some(TableGroup {
            name: g.name(),
            labels: elems.iter().map(|a| g.label(a)).collect(),
            table: elems.iter().map(|a| elems.iter().map(|b| idx(&g.op(a, b))).collect()).collect(),
            inverse: elems.iter().map(|a| idx(&g.inv(a))).collect(),
            identity: idx(&g.identity()),
        })
    }
}

impl Group for TableGroup {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn op(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.labels.len()).collect())
    }
    fn label(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
    /// Exact labels; integers are also read modulo the order when every
    /// label is numeric.
    fn parse(&self, s: &str) -> Option<usize> {
        let t = s.trim();
        if let Some(i) = self.labels.iter().position(|l| l == t) {
            return Some(i);
        }
        let numeric = self.labels.iter().all(|l| l.parse::<i64>().is_ok());
        let v: i64 = t.parse().ok()?;
        numeric.then(|| v.rem_euclid(self.labels.len() as i64) as usize).filter(|&i| self.labels[i] == i.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_group() {
        let g = Symmetric3;
        let els = g.elements().unwrap();
        for a in &els {
            assert_eq!(g.op(a, &g.inv(a)), g.identity());
            for b in &els {
                for c in &els {
                    assert_eq!(g.op(&g.op(a, b), c), g.op(a, &g.op(b, c)));
                }
            }
        }
        assert_ne!(g.op(&els[1], &els[2]), g.op(&els[2], &els[1]));
    }

    #[test]
    fn subgroups_of_z4() {
        let g = Cyclic::new(4);
        assert!(is_subgroup(&g, &[0, 2]));
        assert!(!is_subgroup(&g, &[0, 1]));
        assert_eq!(g.parse("-1"), Some(3));
    }

    #[test]
    fn integer_window() {
        assert_eq!(Integers.window(2), vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn table_group_copies_the_source() {
        let t = TableGroup::of(&Symmetric3).unwrap();
        let g = Symmetric3;
        let els = g.elements().unwrap();
        for (i, a) in els.iter().enumerate() {
            assert_eq!(t.label(&i), g.label(a));
            assert_eq!(t.inv(&i), els.iter().position(|e| *e == g.inv(a)).unwrap());
        }
        assert_eq!(t.parse("021"), Some(1));
        let z = TableGroup::of(&Cyclic::new(4)).unwrap();
        assert_eq!(z.parse("-1"), Some(3));
        assert_eq!(z.op(&3, &2), 1);
        assert!(TableGroup::of(&Integers).is_none());
    }
}
