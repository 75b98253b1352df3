use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::jsl::JoinSemilatticeSemigroup;
use super::poset::FinitePoset;
use super::residuated::ResiduatedSemigroup;
use super::table::Table;
use crate::bits::ElementSet;
use crate::error::{Error, Result};

pub const DEFAULT_SIZE_CAP: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Residuated,
    Jsl,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiniteAlgebra {
    Residuated(ResiduatedSemigroup),
    Jsl(JoinSemilatticeSemigroup),
}

impl FiniteAlgebra {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            FiniteAlgebra::Residuated(_) => AlgebraKind::Residuated,
            FiniteAlgebra::Jsl(_) => AlgebraKind::Jsl,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FiniteAlgebra::Residuated(a) => a.size(),
            FiniteAlgebra::Jsl(a) => a.size(),
        }
    }

    pub fn relabel(&self, perm: &[usize]) -> FiniteAlgebra {
        match self {
            FiniteAlgebra::Residuated(a) => FiniteAlgebra::Residuated(a.relabel(perm)),
            FiniteAlgebra::Jsl(a) => FiniteAlgebra::Jsl(a.relabel(perm)),
        }
    }

    fn encode(&self) -> Vec<u8> {
        match self {
            FiniteAlgebra::Residuated(a) => {
                let mut out: Vec<u8> = a.poset().matrix().iter().flatten().map(|&b| b as u8).collect();
                out.extend_from_slice(a.compose_table().cells());
                out
            }
            FiniteAlgebra::Jsl(a) => {
                let mut out = a.join_table().cells().to_vec();
                out.extend_from_slice(a.compose_table().cells());
                out
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// The lexicographically least encoding of `alg` over all relabellings,
/// together with a relabelling (old index -> new index) achieving it.
pub fn canonical_form(alg: &FiniteAlgebra) -> (Vec<u8>, Vec<usize>) {
    permutations(alg.size()).into_iter().map(|p| (alg.relabel(&p).encode(), p)).min().expect("at least one permutation")
}

/// Every algebra of the given kind and size satisfying its axioms, each
/// exactly once (once per isomorphism class when `modulo_iso`). Residuals of
/// the residuated kind are derived; ordered semigroups without them are skipped.
pub fn enumerate_algebras(kind: AlgebraKind, size: usize, modulo_iso: bool) -> Result<Vec<FiniteAlgebra>> {
    enumerate_algebras_capped(kind, size, modulo_iso, DEFAULT_SIZE_CAP)
}

pub fn enumerate_algebras_capped(
    kind: AlgebraKind,
    size: usize,
    modulo_iso: bool,
    cap: usize,
) -> Result<Vec<FiniteAlgebra>> {
    if size > cap {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    if size == 0 {
        return Err(Error::MalformedInput("carrier must be non-empty".into()));
    }
    let perms = permutations(size);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut emit = |alg: FiniteAlgebra| {
        if modulo_iso {
            let (code, perm) = canonical_form(&alg);
            if seen.insert(code) {
                out.push(alg.relabel(&perm));
            }
        } else {
            out.push(alg);
        }
    };
    for poset in partial_orders(size) {
        if modulo_iso && !is_canonical_poset(&poset, &perms) {
            continue;
        }
        match kind {
            AlgebraKind::Residuated => {
                search_tables(
                    size,
                    |cells| rs_consistent(&poset, size, cells),
                    |compose| {
                        if let Ok(rs) = ResiduatedSemigroup::from_compose(poset.clone(), compose) {
                            emit(FiniteAlgebra::Residuated(rs));
                        }
                    },
                );
            }
            AlgebraKind::Jsl => {
                let Some(join) = join_table(&poset) else { continue };
                search_tables(
                    size,
                    |cells| jsl_consistent(&join, size, cells),
                    |compose| {
                        let alg = JoinSemilatticeSemigroup::new(compose, join.clone()).expect("sizes agree");
                        emit(FiniteAlgebra::Jsl(alg));
                    },
                );
            }
        }
    }
    Ok(out)
}

fn partial_orders(n: usize) -> Vec<FinitePoset> {
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[i].insert(j);
            }
        }
        let antisymmetric = (0..n).all(|i| up[i].iter().all(|j| j == i || !up[j].contains(i)));
        let transitive = (0..n).all(|i| up[i].iter().all(|j| up[j].is_subset(up[i])));
        if antisymmetric && transitive {
            out.push(FinitePoset::from_up_sets(up));
        }
    }
    out
}

fn is_canonical_poset(poset: &FinitePoset, perms: &[Vec<usize>]) -> bool {
    let code = |p: &FinitePoset| -> Vec<bool> { p.matrix().concat() };
    let own = code(poset);
    perms.iter().all(|p| code(&poset.relabel(p)) >= own)
}

fn join_table(poset: &FinitePoset) -> Option<Table> {
    let n = poset.size();
    let rows = (0..n)
        .map(|a| (0..n).map(|b| poset.minimum(poset.up_set(a).intersection(poset.up_set(b)))).collect())
        .collect::<Option<Vec<Vec<usize>>>>()?;
    Some(Table::from_rows(&rows).expect("indices in range"))
}

const UNSET: u8 = u8::MAX;

/// Depth-first assignment of all `n*n` cells, pruning with `consistent`
/// (which must accept any partial table whose defined cells break no law).
fn search_tables(n: usize, mut consistent: impl FnMut(&[u8]) -> bool, mut emit: impl FnMut(Table)) {
    fn go(
        k: usize,
        n: usize,
        cells: &mut Vec<u8>,
        consistent: &mut impl FnMut(&[u8]) -> bool,
        emit: &mut impl FnMut(Table),
    ) {
        if k == cells.len() {
            emit(Table::from_fn(n, |a, b| cells[a * n + b] as usize));
            return;
        }
        for v in 0..n as u8 {
            cells[k] = v;
            if consistent(cells) {
                go(k + 1, n, cells, consistent, emit);
            }
        }
        cells[k] = UNSET;
    }
    let mut cells = vec![UNSET; n * n];
    go(0, n, &mut cells, &mut consistent, &mut emit);
}

#[inline]
fn cell(cells: &[u8], n: usize, a: usize, b: usize) -> Option<usize> {
    let v = cells[a * n + b];
    (v != UNSET).then_some(v as usize)
}

fn associative_so_far(n: usize, cells: &[u8]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let Some(p) = cell(cells, n, x, y) else { continue };
            for z in 0..n {
                let Some(q) = cell(cells, n, y, z) else { continue };
                if let (Some(l), Some(r)) = (cell(cells, n, p, z), cell(cells, n, x, q)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn rs_consistent(poset: &FinitePoset, n: usize, cells: &[u8]) -> bool {
    for a in 0..n {
        for a2 in poset.up_set(a).iter().filter(|&a2| a2 != a) {
            for c in 0..n {
                if let (Some(l), Some(r)) = (cell(cells, n, a, c), cell(cells, n, a2, c)) {
                    if !poset.leq(l, r) {
                        return false;
                    }
                }
                if let (Some(l), Some(r)) = (cell(cells, n, c, a), cell(cells, n, c, a2)) {
                    if !poset.leq(l, r) {
                        return false;
                    }
                }
            }
        }
    }
    associative_so_far(n, cells)
}

fn jsl_consistent(join: &Table, n: usize, cells: &[u8]) -> bool {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = join.get(b, c);
                if let (Some(l), Some(x), Some(y)) = (cell(cells, n, a, bc), cell(cells, n, a, b), cell(cells, n, a, c))
                {
                    if l != join.get(x, y) {
                        return false;
                    }
                }
                if let (Some(l), Some(x), Some(y)) = (cell(cells, n, bc, a), cell(cells, n, b, a), cell(cells, n, c, a))
                {
                    if l != join.get(x, y) {
                        return false;
                    }
                }
            }
        }
    }
    associative_so_far(n, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(1), [[0]]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn labelled_partial_orders() {
        // OEIS A001035
        assert_eq!(partial_orders(1).len(), 1);
        assert_eq!(partial_orders(2).len(), 3);
        assert_eq!(partial_orders(3).len(), 19);
        assert_eq!(partial_orders(4).len(), 219);
    }

    #[test]
    fn one_element_structures() {
        assert_eq!(enumerate_algebras(AlgebraKind::Jsl, 1, true).unwrap().len(), 1);
        assert_eq!(enumerate_algebras(AlgebraKind::Residuated, 1, true).unwrap().len(), 1);
    }

    #[test]
    fn size_cap_is_enforced() {
        assert_eq!(enumerate_algebras(AlgebraKind::Jsl, 4, true), Err(Error::SizeCapExceeded { size: 4, cap: 3 }));
    }

    #[test]
    fn modulo_iso_output_is_canonical_and_distinct() {
        let algs = enumerate_algebras(AlgebraKind::Residuated, 3, true).unwrap();
        let codes: BTreeSet<_> = algs.iter().map(|a| canonical_form(a).0).collect();
        assert_eq!(codes.len(), algs.len());
        for a in &algs {
            let (_, p) = canonical_form(a);
            assert_eq!(&a.relabel(&p), a);
        }
    }
}
