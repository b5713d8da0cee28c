//! Canonical forms and enumeration of finite spaces up to homeomorphism.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fintop::map::ContMap;
use crate::fintop::space::FinSpace;
use crate::points::PointSet;

/// Default ceiling on the size of enumerated universes.
pub const DEFAULT_MAX_POINTS: usize = 4;

/// Largest size for which the space catalog can be generated.
pub const CATALOG_MAX_POINTS: usize = 6;

/// Minimal neighbourhood encoding over admissible point orders, and the order
/// that achieves it (`order[i]` is the original point placed at position `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub code: Vec<u64>,
    pub order: Vec<usize>,
}

impl Canonical {
    pub fn label(&self) -> String {
        let rows: Vec<String> = self.code.iter().map(|r| format!("{r:x}")).collect();
        format!("fs{}:{}", self.code.len(), rows.join("."))
    }

    /// Representative space on points `0..n`.
    pub fn space(&self) -> FinSpace {
        FinSpace::numbered(self.code.iter().map(|&r| PointSet::from_bits(r)).collect())
    }
}

/// Inverse of [`Canonical::label`]: the representative space on points
/// `0..n`. Labels that are not canonical forms are rejected.
pub fn parse_canonical(label: &str) -> Result<FinSpace> {
    let bad = || Error::Parse(format!("not a canonical form: {label:?}"));
    let rest = label.strip_prefix("fs").ok_or_else(bad)?;
    let (n, rows) = rest.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let code: Vec<u64> = if rows.is_empty() {
        Vec::new()
    } else {
        rows.split('.')
            .map(|r| u64::from_str_radix(r, 16).map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if code.len() != n || n > crate::points::MAX_POINTS {
        return Err(bad());
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let space = FinSpace::from_neighbourhoods(labels, code.into_iter().map(PointSet::from_bits).collect())
        .map_err(|_| bad())?;
    if canonicalize(&space).label() != label {
        return Err(bad());
    }
    Ok(space)
}

/// Iso-invariant colouring of points by iterated refinement of
/// (neighbourhood size, closure size).
fn colours(space: &FinSpace) -> Vec<usize> {
    let n = space.len();
    let downs: Vec<PointSet> = (0..n).map(|x| space.point_closure(x)).collect();
    let rank = |keys: &[Vec<usize>]| -> Vec<usize> {
        let mut sorted: Vec<&Vec<usize>> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        keys.iter()
            .map(|k| sorted.binary_search(&k).unwrap())
            .collect()
    };
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|x| vec![space.nbhd(x).len(), downs[x].len()])
        .collect();
    let mut colour = rank(&initial);
    loop {
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut up: Vec<usize> = space.nbhd(x).iter().map(|y| colour[y]).collect();
                let mut down: Vec<usize> = downs[x].iter().map(|y| colour[y]).collect();
                up.sort_unstable();
                down.sort_unstable();
                let mut key = vec![colour[x], usize::MAX];
                key.extend(up);
                key.push(usize::MAX);
                key.extend(down);
                key
            })
            .collect();
        let next = rank(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn encode(space: &FinSpace, order: &[usize], position: &mut [usize]) -> Vec<u64> {
    for (i, &p) in order.iter().enumerate() {
        position[p] = i;
    }
    order
        .iter()
        .map(|&p| {
            space
                .nbhd(p)
                .iter()
                .fold(0u64, |acc, q| acc | 1u64 << position[q])
        })
        .collect()
}

/// Canonical encoding of a space: invariant under relabelling, and equal for
/// two spaces exactly when they are homeomorphic.
pub fn canonicalize(space: &FinSpace) -> Canonical {
    let n = space.len();
    let colour = colours(space);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (colour[x], x));
    let blocks: Vec<(usize, usize)> = {
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || colour[order[i]] != colour[order[start]] {
                blocks.push((start, i));
                start = i;
            }
        }
        blocks
    };
    let mut position = vec![0; n];
    let mut best = Canonical {
        code: encode(space, &order, &mut position),
        order: order.clone(),
    };
    permute_blocks(&blocks, 0, &mut order, &mut |order| {
        let code = encode(space, order, &mut position);
        if code < best.code {
            best = Canonical {
                code,
                order: order.to_vec(),
            };
        }
    });
    best
}

fn permute_blocks<F: FnMut(&[usize])>(
    blocks: &[(usize, usize)],
    b: usize,
    order: &mut Vec<usize>,
    visit: &mut F,
) {
    if b == blocks.len() {
        visit(order);
        return;
    }
    let (start, end) = blocks[b];
    permute_range(order, start, end, &mut |order| {
        permute_blocks(blocks, b + 1, order, visit)
    });
}

fn permute_range<F: FnMut(&mut Vec<usize>)>(
    order: &mut Vec<usize>,
    k: usize,
    end: usize,
    visit: &mut F,
) {
    if end - k <= 1 {
        visit(order);
        return;
    }
    for i in k..end {
        order.swap(k, i);
        permute_range(order, k + 1, end, visit);
        order.swap(k, i);
    }
}

pub fn canonical_form(space: &FinSpace) -> String {
    canonicalize(space).label()
}

/// A homeomorphism `x -> y`, if the spaces are homeomorphic.
pub fn homeomorphism(x: &Arc<FinSpace>, y: &Arc<FinSpace>) -> Option<ContMap> {
    let (cx, cy) = (canonicalize(x), canonicalize(y));
    if cx.code != cy.code {
        return None;
    }
    let mut graph = vec![0; x.len()];
    for (i, &p) in cx.order.iter().enumerate() {
        graph[p] = cy.order[i];
    }
    Some(ContMap::raw(x.clone(), y.clone(), graph))
}

/// One-point extensions of `base`: the new point gets neighbourhood `A ∪ {new}`
/// for an open `A`, and joins the neighbourhoods of a closed set `B` with
/// `A ⊆ U_x` for every `x ∈ B`.
fn extensions(base: &FinSpace) -> Vec<Vec<PointSet>> {
    let n = base.len();
    let full = base.full();
    let opens = base.opens();
    let closed: Vec<PointSet> = opens.iter().map(|o| full.difference(*o)).collect();
    let new = PointSet::singleton(n);
    let mut out = Vec::new();
    for &a in &opens {
        for &b in &closed {
            if b.iter().any(|x| !a.is_subset(base.nbhd(x))) {
                continue;
            }
            let mut nbhd: Vec<PointSet> = (0..n)
                .map(|x| {
                    if b.contains(x) {
                        base.nbhd(x).union(new)
                    } else {
                        base.nbhd(x)
                    }
                })
                .collect();
            nbhd.push(a.union(new));
            out.push(nbhd);
        }
    }
    out
}

static CATALOG_ALL: [OnceLock<Vec<Arc<FinSpace>>>; CATALOG_MAX_POINTS + 1] =
    [const { OnceLock::new() }; CATALOG_MAX_POINTS + 1];
static CATALOG_T0: [OnceLock<Vec<Arc<FinSpace>>>; CATALOG_MAX_POINTS + 1] =
    [const { OnceLock::new() }; CATALOG_MAX_POINTS + 1];

/// Canonical representatives of the `n`-point spaces (only the T0 ones when
/// `t0_only`), in canonical order. Memoized.
pub(crate) fn catalog(n: usize, t0_only: bool) -> &'static [Arc<FinSpace>] {
    assert!(n <= CATALOG_MAX_POINTS, "catalog size {n}");
    let cell = if t0_only { &CATALOG_T0[n] } else { &CATALOG_ALL[n] };
    cell.get_or_init(|| {
        if n == 0 {
            return vec![Arc::new(FinSpace::empty())];
        }
        let mut found: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
        for base in catalog(n - 1, t0_only) {
            for nbhd in extensions(base) {
                let space = FinSpace::numbered(nbhd);
                if t0_only && !space.is_t0() {
                    continue;
                }
                found.insert(canonicalize(&space).code, ());
            }
        }
        found
            .into_keys()
            .map(|code| Arc::new(FinSpace::numbered(code.into_iter().map(PointSet::from_bits).collect())))
            .collect()
    })
}

/// Catalog spaces of every size `0..=max`, smallest first.
pub(crate) fn catalog_up_to(max: usize, t0_only: bool) -> impl Iterator<Item = &'static Arc<FinSpace>> {
    (0..=max.min(CATALOG_MAX_POINTS)).flat_map(move |k| catalog(k, t0_only).iter())
}

/// One representative per homeomorphism class of `n`-point spaces, in
/// canonical order. Sizes above [`DEFAULT_MAX_POINTS`] are refused.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FinSpace>> {
    enumerate_spaces_within(n, DEFAULT_MAX_POINTS)
}

/// As [`enumerate_spaces`] with an explicit ceiling (itself at most
/// [`CATALOG_MAX_POINTS`]).
pub fn enumerate_spaces_within(n: usize, ceiling: usize) -> Result<Vec<FinSpace>> {
    if ceiling > CATALOG_MAX_POINTS {
        return Err(Error::budget(format!(
            "ceiling {ceiling} exceeds the catalog limit {CATALOG_MAX_POINTS}"
        )));
    }
    if n > ceiling {
        return Err(Error::budget(format!(
            "{n}-point enumeration exceeds the ceiling of {ceiling}"
        )));
    }
    Ok(catalog(n, false).iter().map(|s| (**s).clone()).collect())
}

/// Every space with at most `max_points` points (the empty space included),
/// one per homeomorphism class, smallest first.
pub fn universe(max_points: usize) -> Result<Vec<Arc<FinSpace>>> {
    if max_points > CATALOG_MAX_POINTS {
        return Err(Error::budget(format!(
            "universe of {max_points}-point spaces exceeds the catalog limit {CATALOG_MAX_POINTS}"
        )));
    }
    Ok(catalog_up_to(max_points, false).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Every labelled topology on `n` points, found by testing every family of
    /// subsets for the axioms.
    fn labelled_topologies(n: usize) -> Vec<FinSpace> {
        let full = (1u64 << n) - 1;
        let inner: Vec<u64> = (1..full).collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << inner.len() {
            let mut family: Vec<u64> = vec![0, full];
            family.extend(
                inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &s)| s),
            );
            let set: BTreeSet<u64> = family.iter().copied().collect();
            let closed = family.iter().all(|a| {
                family
                    .iter()
                    .all(|b| set.contains(&(a | b)) && set.contains(&(a & b)))
            });
            if closed {
                let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
                let opens: Vec<Vec<String>> = family
                    .iter()
                    .map(|&o| (0..n).filter(|i| o >> i & 1 == 1).map(|i| i.to_string()).collect())
                    .collect();
                out.push(FinSpace::from_opens(&labels, &opens).unwrap());
            }
        }
        out
    }

    /// Homeomorphism test by trying every bijection on the open families.
    fn homeomorphic(x: &FinSpace, y: &FinSpace) -> bool {
        let n = x.len();
        if n != y.len() {
            return false;
        }
        let ox: BTreeSet<PointSet> = x.opens().into_iter().collect();
        let oy: BTreeSet<PointSet> = y.opens().into_iter().collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = false;
        permute_range(&mut perm, 0, n, &mut |p| {
            let image: BTreeSet<PointSet> = ox.iter().map(|o| o.iter().map(|i| p[i]).collect()).collect();
            found |= image == oy;
        });
        found
    }

    fn classes_by_pairwise_search(spaces: &[FinSpace]) -> usize {
        let mut reps: Vec<&FinSpace> = Vec::new();
        for s in spaces {
            if !reps.iter().any(|r| homeomorphic(r, s)) {
                reps.push(s);
            }
        }
        reps.len()
    }

    #[test]
    fn canonical_labels_parse_back() {
        for x in catalog_up_to(4, false) {
            let label = canonical_form(x);
            assert_eq!(&parse_canonical(&label).unwrap(), x.as_ref());
        }
        assert!(parse_canonical("fs2:1").is_err());
        assert!(parse_canonical("fs2:zz").is_err());
        assert!(parse_canonical("nope").is_err());
    }

    #[test]
    fn labelled_counts_match_known_values() {
        assert_eq!(labelled_topologies(2).len(), 4);
        assert_eq!(labelled_topologies(3).len(), 29);
    }

    #[test]
    fn class_counts_small() {
        assert_eq!(enumerate_spaces(0).unwrap().len(), 1);
        assert_eq!(enumerate_spaces(1).unwrap().len(), 1);
        assert_eq!(enumerate_spaces(2).unwrap().len(), 3);
        assert_eq!(enumerate_spaces(3).unwrap().len(), 9);
        for n in 2..=3 {
            assert_eq!(classes_by_pairwise_search(&labelled_topologies(n)), catalog(n, false).len());
        }
    }

    #[test]
    fn four_point_canonical_forms_match_pairwise_isomorphism() {
        let labelled = labelled_topologies(4);
        assert_eq!(labelled.len(), 355);
        let forms: BTreeSet<String> = labelled.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), 33);
        assert_eq!(classes_by_pairwise_search(&labelled), 33);
        assert_eq!(enumerate_spaces(4).unwrap().len(), 33);
        let catalog_forms: BTreeSet<String> = catalog(4, false).iter().map(|s| canonical_form(s)).collect();
        assert_eq!(catalog_forms, forms);
    }

    #[test]
    fn larger_catalogs_have_known_sizes() {
        assert_eq!(catalog(5, false).len(), 139);
        assert_eq!(catalog(6, false).len(), 718);
        let posets: Vec<usize> = (0..=6).map(|n| catalog(n, true).len()).collect();
        assert_eq!(posets, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(enumerate_spaces(5), Err(Error::Budget(_))));
        assert!(enumerate_spaces_within(5, 5).is_ok());
        assert!(universe(7).is_err());
        assert_eq!(universe(3).unwrap().len(), 1 + 1 + 3 + 9);
    }

    #[test]
    fn relabelling_invariance() {
        let s = FinSpace::sierpinski();
        let t = s.relabel(vec!["x".into(), "y".into()]).unwrap();
        let swapped = FinSpace::from_opens(&["p", "q"], &[&[][..], &["p"], &["p", "q"]]).unwrap();
        assert_eq!(canonical_form(&s), canonical_form(&t));
        assert_eq!(canonical_form(&s), canonical_form(&swapped));
        assert_ne!(canonical_form(&FinSpace::discrete(2)), canonical_form(&FinSpace::indiscrete(2)));
        let iso = homeomorphism(&Arc::new(s), &Arc::new(swapped)).unwrap();
        assert!(iso.is_homeomorphism());
    }

    #[test]
    fn catalog_representatives_are_canonical() {
        for n in 0..=4 {
            for s in catalog(n, false) {
                assert_eq!(canonicalize(s).space(), **s);
            }
        }
    }
}
