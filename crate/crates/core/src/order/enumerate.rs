//! Exhaustive enumeration of small posets up to isomorphism.

use super::finite::FinitePoset;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Strict order `below[i]` bitmasks: bit `j` set means `j < i`.
fn canonical(n: usize, below: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|p| {
            let mut img = vec![0u32; n];
            for i in 0..n {
                let mut m = 0u32;
                for j in 0..n {
                    if below[i] >> j & 1 == 1 {
                        m |= 1 << p[j];
                    }
                }
                img[p[i]] = m;
            }
            img
        })
        .min()
        .unwrap_or_default()
}

/// One representative of every isomorphism class of posets on `n` points.
///
/// Candidates are the naturally labelled orders (`i < j` in the poset implies
/// `i < j` as numbers), which meet every class; duplicates are removed by a
/// canonical form minimized over all relabellings.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 points");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut below = vec![0u32; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                below[j] |= 1 << i;
            }
        }
        // transitive: everything below something below j is below j
        let transitive = (0..n).all(|j| {
            (0..n)
                .filter(|&i| below[j] >> i & 1 == 1)
                .all(|i| below[i] & !below[j] == 0)
        });
        if !transitive {
            continue;
        }
        let canon = canonical(n, &below, &perms);
        if seen.insert(canon.clone()) {
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            let poset = FinitePoset::from_fn(labels, |p, q| p == q || canon[q] >> p & 1 == 1)
                .expect("enumerated relation is a partial order");
            out.push(poset);
        }
    }
    out
}
