//! Incremental Bowyer–Watson Delaunay triangulation.
//!
//! The convex hull is closed off by ghost triangles sharing one vertex at
//! infinity, so no finite super-triangle is needed and hull edges are never
//! lost.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GHOST: usize = usize::MAX;
const JITTER: f64 = 1e-9;

type Point = (f64, f64);

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Positive when `d` lies strictly inside the circumcircle of the
/// counter-clockwise triangle `abc`.
fn incircle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let (adx, ady) = (a.0 - d.0, a.1 - d.1);
    let (bdx, bdy) = (b.0 - d.0, b.1 - d.1);
    let (cdx, cdy) = (c.0 - d.0, c.1 - d.1);
    let ad = adx * adx + ady * ady;
    let bd = bdx * bdx + bdy * bdy;
    let cd = cdx * cdx + cdy * cdy;
    adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx)
}

fn strictly_between(a: Point, b: Point, p: Point) -> bool {
    let dot = (p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1);
    let len = (b.0 - a.0).powi(2) + (b.1 - a.1).powi(2);
    dot > 0.0 && dot < len
}

/// Does inserting `p` destroy triangle `t`?
fn conflicts(points: &[Point], t: [usize; 3], p: Point) -> bool {
    if t[2] == GHOST {
        // ghost triangle (u, v, ∞): the outside of hull edge u -> v lies to its left
        let (u, v) = (points[t[0]], points[t[1]]);
        let o = orient(u, v, p);
        o > 0.0 || (o == 0.0 && strictly_between(u, v, p))
    } else {
        incircle(points[t[0]], points[t[1]], points[t[2]], p) > 0.0
    }
}

/// Rotates a triangle so that a ghost vertex, if present, comes last.
fn normalize(t: [usize; 3]) -> [usize; 3] {
    match t.iter().position(|&x| x == GHOST) {
        Some(0) => [t[1], t[2], t[0]],
        Some(1) => [t[2], t[0], t[1]],
        _ => t,
    }
}

/// Delaunay edges of points in general position, as sorted index pairs.
/// Falls back to a path when every point is collinear.
pub(crate) fn triangulate(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let third = (2..n).find(|&c| orient(points[0], points[1], points[c]) != 0.0);
    let Some(c) = third else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| points[i].partial_cmp(&points[j]).unwrap());
        let mut edges: Vec<_> = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        edges.sort_unstable();
        return edges;
    };
    let (a, b) = if orient(points[0], points[1], points[c]) > 0.0 { (0, 1) } else { (1, 0) };
    let mut triangles: Vec<[usize; 3]> = vec![[a, b, c], [b, a, GHOST], [c, b, GHOST], [a, c, GHOST]];

    let mut bad = Vec::new();
    let mut cavity: Vec<(usize, usize)> = Vec::new();
    for p in (2..n).filter(|&p| p != c) {
        let point = points[p];
        bad.clear();
        let mut kept = Vec::with_capacity(triangles.len() + 2);
        for &t in &triangles {
            if conflicts(points, t, point) {
                bad.push(t);
            } else {
                kept.push(t);
            }
        }
        cavity.clear();
        for t in &bad {
            for i in 0..3 {
                cavity.push((t[i], t[(i + 1) % 3]));
            }
        }
        let boundary: Vec<(usize, usize)> =
            cavity.iter().copied().filter(|&(u, v)| !cavity.contains(&(v, u))).collect();
        for (u, v) in boundary {
            kept.push(normalize([u, v, p]));
        }
        triangles = kept;
    }

    let mut edges: Vec<(usize, usize)> = triangles
        .iter()
        .filter(|t| t[2] != GHOST)
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Delaunay edges of `points` after a tiny seed-derived perturbation that
/// breaks collinear and cocircular ties.
pub fn delaunay_edges(points: &[(f64, f64)], seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a09_e667_f3bc_c909);
    let jittered: Vec<Point> =
        points.iter().map(|&(x, y)| (x + rng.gen_range(-JITTER..JITTER), y + rng.gen_range(-JITTER..JITTER))).collect();
    triangulate(&jittered)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Edges of every triangle whose circumcircle holds no other point.
    fn brute_force(points: &[Point]) -> Vec<(usize, usize)> {
        let n = points.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let o = orient(points[i], points[j], points[k]);
                    if o == 0.0 {
                        continue;
                    }
                    let (a, b, c) = if o > 0.0 { (i, j, k) } else { (i, k, j) };
                    let empty = (0..n)
                        .filter(|&x| x != i && x != j && x != k)
                        .all(|x| incircle(points[a], points[b], points[c], points[x]) <= 0.0);
                    if empty {
                        edges.extend([(i, j), (j, k), (i, k)]);
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    fn cloud(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0))).collect()
    }

    #[test]
    fn matches_empty_circle_oracle() {
        for seed in 0..60 {
            let n = 3 + (seed as usize % 28);
            let points = cloud(n, seed);
            assert_eq!(triangulate(&points), brute_force(&points), "seed {seed}, n {n}");
        }
    }

    #[test]
    fn square_grid_is_triangulated() {
        let points: Vec<Point> = (0..5).flat_map(|x| (0..5).map(move |y| (x as f64, y as f64))).collect();
        let edges = delaunay_edges(&points, 3);
        // every unit grid edge has an empty diametral circle
        for x in 0..5 {
            for y in 0..5 {
                let id = 5 * x + y;
                if y < 4 {
                    assert!(edges.contains(&(id, id + 1)));
                }
                if x < 4 {
                    assert!(edges.contains(&(id, id + 5)));
                }
            }
        }
        assert!(edges.len() >= 56 && edges.len() <= 3 * 25 - 6);
    }

    #[test]
    fn collinear_points_form_a_path() {
        let points: Vec<Point> = (0..6).map(|i| (i as f64, 2.0 * i as f64)).collect();
        assert_eq!(triangulate(&points).len(), 5);
    }

    #[test]
    fn euler_bound() {
        for seed in 0..20 {
            let points = cloud(200, seed);
            let edges = delaunay_edges(&points, seed);
            assert!(edges.len() <= 3 * 200 - 6);
        }
    }
}
