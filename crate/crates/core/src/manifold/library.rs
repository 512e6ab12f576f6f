use super::TriangulatedManifold;
use crate::error::{Error, Result};

const NAMES: [&str; 8] = ["circle", "torus2", "sphere2", "genus2", "sphere3", "torus3", "disk", "annulus"];

/// Names accepted by [`library`].
pub fn library_names() -> &'static [&'static str] {
    &NAMES
}

/// Built-in triangulations:
///
/// - `circle`: boundary of a triangle.
/// - `torus2`: the 7-vertex torus.
/// - `sphere2`: the octahedron.
/// - `genus2`: connected sum of two 7-vertex tori, 11 vertices.
/// - `sphere3`: boundary of the 4-simplex.
/// - `torus3`: Kuhn triangulation of the 3×3×3 cubical torus, 27 vertices.
/// - `disk`: cone over `circle`.
/// - `annulus`: `circle × [0, 1]`.
pub fn library(name: &str) -> Result<TriangulatedManifold> {
    let (n, facets) = match name {
        "circle" => (3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        "torus2" => (7, torus7()),
        "sphere2" => (6, octahedron()),
        "genus2" => genus2(),
        "sphere3" => (5, (0..5u32).map(|i| (0..5).filter(|&j| j != i).collect()).collect()),
        "torus3" => (27, kuhn_torus3()),
        "disk" => (4, vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]]),
        "annulus" => (6, annulus()),
        _ => return Err(Error::UnknownManifold(name.to_string())),
    };
    TriangulatedManifold::from_facets(n, &facets)
}

fn torus7() -> Vec<Vec<u32>> {
    (0..7u32).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect()
}

fn octahedron() -> Vec<Vec<u32>> {
    let mut f = Vec::new();
    for a in [0u32, 1] {
        for (b, c) in [(2u32, 3u32), (3, 4), (4, 5), (5, 2)] {
            f.push(vec![a, b, c]);
        }
    }
    f
}

/// Two 7-vertex tori with the triangle `{0,1,3}` removed from each and the
/// resulting boundary circles identified.
fn genus2() -> (usize, Vec<Vec<u32>>) {
    let hole = [0u32, 1, 3];
    let mut facets: Vec<Vec<u32>> = torus7().into_iter().filter(|f| sorted(f) != hole).collect();
    // Second copy: vertices of the hole are shared, the other four shift to 7..11.
    let shift = |v: u32| match v {
        0 | 1 | 3 => v,
        2 => 7,
        _ => v + 4,
    };
    facets.extend(torus7().into_iter().filter(|f| sorted(f) != hole).map(|f| f.into_iter().map(shift).collect()));
    (11, facets)
}

fn sorted(f: &[u32]) -> Vec<u32> {
    let mut s = f.to_vec();
    s.sort_unstable();
    s
}

fn kuhn_torus3() -> Vec<Vec<u32>> {
    const N: u32 = 3;
    let id = |p: [u32; 3]| p[0] % N + N * (p[1] % N) + N * N * (p[2] % N);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut facets = Vec::new();
    for x in 0..N {
        for y in 0..N {
            for z in 0..N {
                for p in perms {
                    let mut cur = [x, y, z];
                    let mut s = vec![id(cur)];
                    for axis in p {
                        cur[axis] += 1;
                        s.push(id(cur));
                    }
                    facets.push(s);
                }
            }
        }
    }
    facets
}

fn annulus() -> Vec<Vec<u32>> {
    // Bottom circle 0,1,2 and top circle 3,4,5, each triangle prism split in two.
    let mut f = Vec::new();
    for i in 0..3u32 {
        let j = (i + 1) % 3;
        f.push(vec![i, j, j + 3]);
        f.push(vec![i, i + 3, j + 3]);
    }
    f
}

/// Möbius strip on 5 vertices; construction fails with a non-orientability
/// report.
pub fn mobius_strip() -> Result<TriangulatedManifold> {
    let facets: Vec<Vec<u32>> = (0..5u32).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    TriangulatedManifold::from_facets(5, &facets)
}
