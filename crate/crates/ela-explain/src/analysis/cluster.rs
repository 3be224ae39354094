//! Agglomerative hierarchical clustering (Euclidean distance, average
//! linkage) with a deterministic dendrogram leaf order and the
//! two-cluster partition from the top split.

use serde::Serialize;

use crate::stats::euclidean;
use crate::{Error, Result};

/// One merge step; cluster ids follow the scipy convention: 0..n-1 are
/// leaves, n+k is the cluster created by merge k.
#[derive(Debug, Clone, Serialize)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkageTree {
    pub merges: Vec<Merge>,
    /// Dendrogram leaf order (in-order traversal, lower id first).
    pub leaf_order: Vec<usize>,
    /// Leaf sets of the two subtrees under the final merge.
    pub two_cluster_partition: (Vec<usize>, Vec<usize>),
}

/// Average-linkage agglomerative clustering. Ties on merge distance are
/// broken by the smaller cluster-id pair, so the result is a pure
/// function of the input order.
pub fn hierarchical_cluster(vectors: &[Vec<f64>]) -> Result<LinkageTree> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::invalid_argument(
            "vectors",
            "need at least two vectors to cluster",
        ));
    }
    let width = vectors[0].len();
    if vectors.iter().any(|v| v.len() != width) {
        return Err(Error::SchemaMismatch {
            reason: "representation vectors differ in length".into(),
        });
    }

    // active clusters: (id, member leaves); distances kept pairwise
    let mut active: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut dist: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| euclidean(&vectors[i], &vectors[j]))
                .collect()
        })
        .collect();
    // map active position -> distance-matrix row
    let mut rows: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n - 1);
    let mut children: Vec<Option<(usize, usize)>> = vec![None; n];

    while active.len() > 1 {
        let mut best = (0usize, 1usize, f64::INFINITY);
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                let d = dist[rows[i]][rows[j]];
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        let (i, j, d) = best;
        let (id_a, members_a) = active[i].clone();
        let (id_b, members_b) = active[j].clone();
        let (lo, hi) = if id_a < id_b { (id_a, id_b) } else { (id_b, id_a) };
        let size = members_a.len() + members_b.len();
        let new_id = n + merges.len();
        merges.push(Merge {
            a: lo,
            b: hi,
            distance: d,
            size,
        });
        children.push(Some((lo, hi)));

        // Lance-Williams update for average linkage
        let na = members_a.len() as f64;
        let nb = members_b.len() as f64;
        let row_a = rows[i];
        let row_b = rows[j];
        for k in 0..active.len() {
            if k == i || k == j {
                continue;
            }
            let rk = rows[k];
            let updated = (na * dist[row_a][rk] + nb * dist[row_b][rk]) / (na + nb);
            dist[row_a][rk] = updated;
            dist[rk][row_a] = updated;
        }

        let mut merged_members = members_a;
        merged_members.extend(members_b);
        active[i] = (new_id, merged_members);
        // row_a now represents the merged cluster
        active.remove(j);
        rows.remove(j);
    }

    let root = n + merges.len() - 1;
    let mut leaf_order = Vec::with_capacity(n);
    fn in_order(id: usize, n: usize, children: &[Option<(usize, usize)>], out: &mut Vec<usize>) {
        if id < n {
            out.push(id);
        } else if let Some((a, b)) = children[id] {
            in_order(a, n, children, out);
            in_order(b, n, children, out);
        }
    }
    in_order(root, n, &children, &mut leaf_order);

    let (top_a, top_b) = children[root].expect("root is a merge");
    let mut left = Vec::new();
    let mut right = Vec::new();
    in_order(top_a, n, &children, &mut left);
    in_order(top_b, n, &children, &mut right);

    Ok(LinkageTree {
        merges,
        leaf_order,
        two_cluster_partition: (left, right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_vectors_merge_at_zero_distance() {
        let v = vec![vec![1.0, 2.0], vec![1.0, 2.0]];
        let tree = hierarchical_cluster(&v).unwrap();
        assert_eq!(tree.merges.len(), 1);
        assert_eq!(tree.merges[0].distance, 0.0);
    }

    #[test]
    fn top_split_isolates_the_far_vector() {
        let v = vec![vec![0.0, 0.0], vec![100.0, 100.0], vec![0.0, 0.0]];
        let tree = hierarchical_cluster(&v).unwrap();
        let (a, b) = &tree.two_cluster_partition;
        let singleton = if a.len() == 1 { a } else { b };
        assert_eq!(singleton, &vec![1]);
    }

    #[test]
    fn two_gaussian_centers_are_recovered_by_the_top_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let mut vectors = Vec::new();
        let mut labels = Vec::new();
        for i in 0..50 {
            let center = if i % 2 == 0 { 0.0 } else { 30.0 };
            labels.push(i % 2);
            vectors.push(
                (0..8)
                    .map(|_| center + rng.random_range(-1.0..1.0))
                    .collect::<Vec<f64>>(),
            );
        }
        let tree = hierarchical_cluster(&vectors).unwrap();
        let (a, b) = &tree.two_cluster_partition;
        for side in [a, b] {
            let first = labels[side[0]];
            assert!(side.iter().all(|&i| labels[i] == first));
        }
        assert_eq!(a.len() + b.len(), 50);
    }

    #[test]
    fn leaf_order_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vectors: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..4).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let a = hierarchical_cluster(&vectors).unwrap();
        let b = hierarchical_cluster(&vectors).unwrap();
        assert_eq!(a.leaf_order, b.leaf_order);
        let mut sorted = a.leaf_order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let v = vec![vec![1.0, 2.0], vec![1.0]];
        assert!(hierarchical_cluster(&v).is_err());
    }
}
