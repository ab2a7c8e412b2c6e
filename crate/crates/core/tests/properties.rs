//! Property tests against independent oracles.

use std::collections::BTreeSet;

use glmn_core::decomp::Theta;
use glmn_core::matrix::{identity, invert_unitriangular_dense, mat_mul};
use glmn_core::*;
use proptest::prelude::*;

/// Symbols on [-6, 6], mostly circles.
fn diagram(max_k: usize) -> impl Strategy<Value = WeightDiagram> {
    prop::collection::vec(0_u8..10, 13)
        .prop_map(|v| {
            let (mut x, mut gt, mut lt) = (Vec::new(), Vec::new(), Vec::new());
            for (i, s) in v.into_iter().enumerate() {
                let p = i as i64 - 6;
                match s {
                    0 | 1 => x.push(p),
                    2 => gt.push(p),
                    3 => lt.push(p),
                    _ => {}
                }
            }
            WeightDiagram::from_parts(x, gt, lt).unwrap()
        })
        .prop_filter("atypicality bound", move |f| f.atypicality() <= max_k)
}

fn core_free(max_k: usize) -> impl Strategy<Value = WeightDiagram> {
    diagram(max_k).prop_map(|f| f.strip_core()).prop_filter("at least one cross", |f| f.atypicality() > 0)
}

/// Caps by bracket matching: scanning left to right, each circle closes the
/// most recent open cross. Returned as (begin, end), begin decreasing.
fn caps_by_stack(f: &WeightDiagram) -> Vec<(i64, i64)> {
    let Some(&low) = f.crosses().last() else {
        return Vec::new();
    };
    let mut open = Vec::new();
    let mut caps = Vec::new();
    let mut p = low;
    while caps.len() < f.atypicality() {
        match f.symbol_at(p) {
            Symbol::Cross => open.push(p),
            Symbol::Circle => {
                if let Some(b) = open.pop() {
                    caps.push((b, p));
                }
            }
            _ => {}
        }
        p += 1;
    }
    caps.sort_by_key(|c| std::cmp::Reverse(c.0));
    caps
}

/// Matching decided from caps built by the stack oracle.
fn matches_oracle(g: &WeightDiagram, f: &WeightDiagram) -> bool {
    g.same_core(f)
        && g.atypicality() == f.atypicality()
        && caps_by_stack(g).iter().all(|&(b, e)| {
            let (sb, se) = (f.symbol_at(b), f.symbol_at(e));
            (sb == Symbol::Cross && se == Symbol::Circle) || (sb == Symbol::Circle && se == Symbol::Cross)
        })
}

/// All k-subsets of the window that avoid the core.
fn brute_force_matching(f: &WeightDiagram) -> BTreeSet<WeightDiagram> {
    let k = f.atypicality();
    let Some((lo, _)) = f.support_bounds().filter(|_| k > 0) else {
        return [f.clone()].into();
    };
    let lo = lo - 2 * k as i64 - f.core_len() as i64;
    let hi = f.crosses()[0];
    let free: Vec<i64> = (lo..=hi).filter(|&p| !f.is_core(p)).collect();
    let mut out = BTreeSet::new();
    let mut pick = Vec::new();
    fn go(
        free: &[i64],
        k: usize,
        start: usize,
        pick: &mut Vec<i64>,
        f: &WeightDiagram,
        out: &mut BTreeSet<WeightDiagram>,
    ) {
        if pick.len() == k {
            let g = WeightDiagram::from_parts(pick.iter().copied(), f.core_left().to_vec(), f.core_right().to_vec())
                .unwrap();
            if matches_oracle(&g, f) {
                out.insert(g);
            }
            return;
        }
        for i in start..free.len() {
            pick.push(free[i]);
            go(free, k, i + 1, pick, f, out);
            pick.pop();
        }
    }
    go(&free, k, 0, &mut pick, f, &mut out);
    out
}

/// Legal ends straight from the definition: every prefix tally from `b` is
/// non-negative.
fn legal_ends_oracle(f: &WeightDiagram, a: i64) -> Vec<(i64, i64)> {
    let lo = f.support_bounds().unwrap().0 - 2 * f.atypicality() as i64 - 2;
    (lo..a)
        .rev()
        .filter(|&b| f.symbol_at(b) == Symbol::Circle)
        .filter(|&b| ((b + 1)..=a).all(|c| l_value(f, b, c).unwrap() >= 0))
        .map(|b| (b, l_value(f, b, a).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_round_trip(f in diagram(13)) {
        let s = f.serialize();
        prop_assert_eq!(WeightDiagram::parse(&s).unwrap(), f.clone());
        prop_assert_eq!(WeightDiagram::parse(&s).unwrap().serialize(), s);
    }

    #[test]
    fn cap_diagram_agrees_with_bracket_matching(f in diagram(6)) {
        let d = cap_diagram(&f);
        let got: Vec<(i64, i64)> = d.caps().iter().map(|c| (c.begin, c.end)).collect();
        prop_assert_eq!(got, caps_by_stack(&f));
        prop_assert!(d.check().is_ok());
        prop_assert_eq!(d.to_weight_diagram(), f);
    }

    #[test]
    fn caps_do_not_cross_and_fill_their_interior(f in diagram(6)) {
        let caps = cap_diagram(&f).caps().to_vec();
        for x in &caps {
            for y in &caps {
                let crossing = x.begin < y.begin && y.begin < x.end && x.end < y.end;
                prop_assert!(!crossing);
            }
            for p in x.begin + 1..x.end {
                let endpoint = caps.iter().any(|c| x.encloses(c) && (c.begin == p || c.end == p));
                prop_assert!(f.is_core(p) || endpoint, "gap at {} under {:?}", p, x);
            }
        }
    }

    #[test]
    fn enumerate_matching_agrees_with_brute_force(f in diagram(3)) {
        let got: BTreeSet<_> = enumerate_matching(&f).into_iter().collect();
        prop_assert!(got.contains(&f));
        for g in &got {
            prop_assert!(g.same_core(&f) && g.atypicality() == f.atypicality());
            prop_assert!(g == &f || g.norm() < f.norm());
        }
        prop_assert_eq!(got, brute_force_matching(&f));
    }

    #[test]
    fn legal_ends_agree_with_definition(f in diagram(5)) {
        for &a in f.crosses() {
            let got: Vec<(i64, i64)> = legal_ends(&f, a).unwrap().iter().map(|m| (m.end, m.weight)).collect();
            prop_assert_eq!(got, legal_ends_oracle(&f, a));
        }
    }

    #[test]
    fn weight_zero_moves_are_caps(f in diagram(5)) {
        for &a in f.crosses() {
            for m in legal_ends(&f, a).unwrap() {
                let g = apply_move(&f, a, m.end).unwrap();
                prop_assert!(g.norm() < f.norm());
                prop_assert_eq!(m.weight == 0, cap_diagram(&g).contains_cap(m.end, a));
                if m.weight == 0 {
                    let inner_core = (m.end + 1..a).filter(|&p| f.is_core(p)).count() as i64;
                    prop_assert_eq!((f.norm() - g.norm() - inner_core).rem_euclid(2), 1);
                    prop_assert_eq!(predecessor(&g, a), Some(f.clone()));
                }
            }
        }
    }

    #[test]
    fn sigma_keeps_core_and_atypicality(f in diagram(5)) {
        for i in 1..=f.atypicality() {
            let s = sigma(i, &DiagramSum::singleton(f.clone())).unwrap();
            for g in s.diagrams() {
                prop_assert!(g.same_core(&f) && g.atypicality() == f.atypicality());
            }
        }
    }

    #[test]
    fn three_routes_agree(f in diagram(4)) {
        let r = verify_theorem_a(&f);
        prop_assert!(r.pass(), "{:?}", r);
        prop_assert_eq!(decompose(&f), enumerate_matching(&f));
    }

    #[test]
    fn path_identities(f in core_free(3), steps in prop::collection::vec(0_usize..100, 1..4)) {
        let mut g = f.clone();
        for s in steps {
            let es = edges_from(&g).unwrap();
            g = es[s % es.len()].to.clone();
        }
        let paths = increasing_paths(&f, &g).unwrap();
        let member = i64::from(decompose(&f).contains(&g));
        prop_assert_eq!(paths.iter().map(Path::sign).sum::<i64>(), member);
        prop_assert_eq!(sigma_product(&f).coeff(&g), member);
        for p in &paths {
            let seen: BTreeSet<_> = std::iter::once(p.source()).chain(p.edges().iter().map(|e| &e.to)).collect();
            prop_assert_eq!(seen.len(), p.len() + 1);
            if p.is_regular() {
                prop_assert_eq!(p.weight(), 0);
                continue;
            }
            let irr = p.irregular_edges();
            let ends: Vec<i64> = p.edges().iter().zip(&irr).filter(|(_, &b)| b).map(|(e, _)| e.end).collect();
            let top = ends.iter().max().unwrap();
            prop_assert_eq!(ends.iter().filter(|e| *e == top).count(), 1);
            let q = star(p).unwrap();
            prop_assert_eq!(star(&q).unwrap(), p.clone());
            prop_assert_eq!(q.sign(), -p.sign());
            for x in p.edges() {
                for y in p.edges() {
                    let (b, c, a, s) = (x.start, x.end, y.start, y.end);
                    if c < s && s < b && b < a {
                        prop_assert!(x.weight > 0, "[{},{}] before [{},{}]", b, c, a, s);
                    }
                }
            }
        }
    }

    #[test]
    fn toggles_give_the_kac_modules(f in diagram(4)) {
        let k = f.atypicality();
        let caps = cap_diagram(&f).caps().to_vec();
        let mut all = BTreeSet::new();
        for t in Theta::all(k) {
            let m = toggle_caps(&f, &t).unwrap();
            prop_assert!(decompose(&m).contains(&f));
            all.insert(m);
        }
        prop_assert_eq!(all.len(), 1 << k);
        for p in 0..k {
            let mut bits = vec![false; k];
            bits[p] = true;
            let one = toggle_caps(&f, &Theta(bits)).unwrap();
            prop_assert_eq!(one, apply_move(&f, caps[p].begin, caps[p].end).unwrap());
        }
        prop_assert_eq!(kac_modules_containing(&f), all.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn weights_round_trip(
        left in prop::collection::btree_set(-20_i64..20, 1..8),
        right in prop::collection::btree_set(-20_i64..20, 1..8),
    ) {
        let w = DominantWeight::new(left.into_iter().rev().collect(), right.into_iter().collect()).unwrap();
        let f = to_diagram(&w);
        prop_assert_eq!(from_diagram(&f).unwrap(), w.clone());
        prop_assert_eq!(f.atypicality(), atypicality(&w));
        prop_assert_eq!(DominantWeight::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert_eq!(shift(&unshift(&w)).unwrap(), w.clone());
        if f.atypicality() <= 3 {
            for g in decompose(&f) {
                let v = from_diagram(&g).unwrap();
                prop_assert_eq!((v.m, v.n), (w.m, w.n));
                prop_assert!(g.same_core(&f));
            }
        }
    }

    #[test]
    fn ext_is_symmetric_and_local(f in diagram(3)) {
        let ns = ext_neighbors(&f);
        let set: BTreeSet<_> = ns.iter().map(|n| n.diagram.clone()).collect();
        prop_assert_eq!(set.len(), ns.len());
        for n in &ns {
            prop_assert_eq!(ext_dim(&f, &n.diagram), 1);
            prop_assert_eq!(ext_dim(&n.diagram, &f), 1);
        }
        let window = enumerate_matching(&f);
        for g in &window {
            prop_assert_eq!(ext_dim(&f, g), u32::from(set.contains(g)));
        }
    }

    #[test]
    fn renderings_are_well_formed(f in diagram(5)) {
        let caps = cap_diagram(&f).caps().len();
        let svg = render_svg(&f, Style::Cap);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        prop_assert_eq!(doc.descendants().filter(|n| n.has_tag_name("path")).count(), caps);
        let ascii = render_ascii(&f, Style::Weight);
        let symbols = ascii.lines().next().unwrap().replace(' ', "");
        prop_assert_eq!(symbols.matches('x').count(), f.atypicality());
    }

    #[test]
    fn dense_inverse(n in 1_usize..7, raw in prop::collection::vec(-3_i64..4, 36), lower in any::<bool>()) {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| match (i == j, (j < i) == lower) {
                (true, _) => 1,
                (false, true) => raw[i * 6 + j],
                _ => 0,
            }).collect())
            .collect();
        let inv = invert_unitriangular_dense(&m).unwrap();
        prop_assert_eq!(mat_mul(&m, &inv), identity(n));
        prop_assert_eq!(mat_mul(&inv, &m), identity(n));
    }
}

#[test]
fn multiplicity_matrix_on_small_seeds() {
    for xs in [vec![0, 2], vec![1, 2, 4], vec![0, 3, 4]] {
        let f = WeightDiagram::core_free(xs);
        let m = multiplicity_matrix(std::slice::from_ref(&f)).unwrap();
        m.check_unitriangular().unwrap();
        let c = m.position(&f).unwrap();
        assert_eq!(m.column_sum(c), decompose(&f).len() as i64);
        let inv = invert_unitriangular(&m).unwrap();
        assert_eq!(mat_mul(&m.to_dense(), &inv.to_dense()), identity(m.dim()));
    }
}
