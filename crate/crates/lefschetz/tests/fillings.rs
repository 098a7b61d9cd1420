use lefschetz::palf::{self, FillingCase, FillingResult};
use lefschetz::relations::SubstitutionCertificate;
use lefschetz::plumbing::{self, PlumbingGraph};

fn graph(degs: &[i64], edges: &[(usize, usize)], decs: &[&[usize]]) -> PlumbingGraph {
    let mut g = PlumbingGraph::new();
    for (i, &d) in degs.iter().enumerate() {
        g.add_vertex(i + 1, -d).unwrap();
    }
    for &(a, b) in edges {
        g.add_edge(a, b).unwrap();
    }
    g.with_decorations(decs.iter().map(|d| d.to_vec()).collect())
}

fn fill(y: &PlumbingGraph) -> FillingResult {
    let g = plumbing::blow_down_all(y);
    let r = palf::filling_palf(&g, y).unwrap();
    assert_eq!(r.palf.euler_char(), r.expected_euler);
    for c in &r.certificates {
        c.verify().unwrap();
    }
    r
}

fn chains(certs: &[SubstitutionCertificate]) -> Vec<(Vec<i64>, i64)> {
    certs.iter().map(|c| (c.chain.clone().unwrap(), c.delta_chi())).collect()
}

// Star-shaped P-resolutions whose class-T chain runs through the central
// vertex: vertex 1 on the left, 2 the center, 3 onwards to the right, and the
// remaining vertices on the vertical arm.
#[test]
fn central_chain_fixtures() {
    let cases: Vec<(PlumbingGraph, i64, Vec<i64>)> = vec![
        (graph(&[2, 5, 3, 1, 4], &[(1, 2), (2, 3), (2, 4), (4, 5)], &[&[1, 2, 3], &[5]]), 2, vec![2, 5, 3]),
        (graph(&[2, 5, 3, 1, 2, 5], &[(1, 2), (2, 3), (2, 4), (4, 5), (5, 6)], &[&[1, 2, 3], &[5, 6]]), 2, vec![3, 5, 2]),
        (graph(&[2, 5, 3, 1, 3, 3], &[(1, 2), (2, 3), (2, 4), (4, 5), (5, 6)], &[&[1, 2, 3], &[5, 6]]), 3, vec![2, 5, 3]),
        (graph(&[2, 5, 1, 4, 1, 4], &[(1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], &[&[1, 2], &[4], &[6]]), 3, vec![2, 5]),
        (
            graph(&[2, 5, 1, 3, 3, 1, 4], &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 7)], &[&[1, 2], &[4, 5], &[7]]),
            4,
            vec![2, 5],
        ),
        (graph(&[2, 6, 2, 3, 1, 4], &[(1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], &[&[1, 2, 3, 4], &[6]]), 2, vec![3, 2, 6, 2]),
        (
            graph(&[2, 5, 3, 1, 4, 1, 4], &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 7)], &[&[1, 2, 3], &[5], &[7]]),
            3,
            vec![2, 5, 3],
        ),
    ];
    for (i, (y, chi, chain)) in cases.iter().enumerate() {
        assert!(plumbing::validate_p_resolution(y).ok, "fixture {}", i + 1);
        let r = fill(y);
        assert_eq!(r.case, FillingCase::Central, "fixture {}", i + 1);
        assert_eq!(r.palf.euler_char(), *chi, "fixture {}", i + 1);
        let drop = -(chain.len() as i64);
        assert_eq!(chains(&r.certificates), vec![(chain.clone(), drop)], "fixture {}", i + 1);
    }
}

type Frozen = (Vec<Vec<usize>>, i64, FillingCase, usize);

fn check_all(g: &PlumbingGraph, budget: usize, want: &[Frozen]) {
    let e = plumbing::enumerate_p_resolutions(g, budget);
    let got: Vec<Frozen> = e
        .results
        .iter()
        .map(|y| {
            let r = fill(y);
            (y.decorations.clone(), r.palf.euler_char(), r.case, r.certificates.len())
        })
        .collect();
    assert_eq!(got, want);
}

#[test]
fn dihedral_9_2() {
    use FillingCase::*;
    check_all(
        &plumbing::build_dihedral(9, 2).unwrap(),
        0,
        &[
            (vec![vec![1, 2]], 3, Linear, 1),
            (vec![vec![1, 3]], 3, Linear, 1),
            (vec![vec![1, 4]], 3, Linear, 1),
            (vec![vec![2], vec![3], vec![4]], 5, Minimal, 0),
        ],
    );
}

#[test]
fn tetrahedral() {
    use FillingCase::*;
    check_all(
        &plumbing::build_star(2, &[2], &[3], &[3]).unwrap(),
        0,
        &[(vec![vec![1, 2]], 5, Minimal, 0), (vec![vec![3, 1, 4]], 4, HandleLinear, 1)],
    );
}

#[test]
fn icosahedral() {
    use FillingCase::*;
    check_all(
        &plumbing::build_star(2, &[2], &[3], &[5]).unwrap(),
        3,
        &[
            (vec![vec![1, 2]], 5, Minimal, 0),
            (vec![vec![1, 4]], 3, HandleLinear, 1),
            (vec![vec![2, 1, 3], vec![4, 5, 6]], 2, HandleRewrite, 1),
        ],
    );
}

#[test]
fn octahedral() {
    use FillingCase::*;
    check_all(
        &plumbing::build_star(2, &[2], &[3], &[4]).unwrap(),
        1,
        &[
            (vec![vec![1, 2]], 5, Minimal, 0),
            (vec![vec![2], vec![4]], 4, HandleLinear, 1),
            (vec![vec![2, 1, 4], vec![3]], 3, HandleRewrite, 1),
        ],
    );
}
