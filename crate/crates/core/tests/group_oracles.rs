//! Group arithmetic checked against independent models: piecewise-linear
//! maps of [0, 1] for F, a stack reducer for free groups, and plain vector
//! addition for lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tgf::group::{CanonicalElement, GeneratorLetter, GroupBackend, Payload, TreePair, Word};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A PL homeomorphism given by matching breakpoint lists.
#[derive(Clone)]
struct Pl {
    xs: Vec<Q>,
    ys: Vec<Q>,
}

impl Pl {
    fn eval(&self, t: &Q) -> Q {
        let i = (1..self.xs.len()).find(|&i| t <= &self.xs[i]).unwrap();
        let (x0, x1, y0, y1) = (&self.xs[i - 1], &self.xs[i], &self.ys[i - 1], &self.ys[i]);
        y0 + (t - x0) * (y1 - y0) / (x1 - x0)
    }

    fn inverse(&self) -> Pl {
        Pl {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }
}

fn x0() -> Pl {
    Pl {
        xs: vec![q(0, 1), q(1, 2), q(3, 4), q(1, 1)],
        ys: vec![q(0, 1), q(1, 4), q(1, 2), q(1, 1)],
    }
}

fn x1() -> Pl {
    Pl {
        xs: vec![q(0, 1), q(1, 2), q(3, 4), q(7, 8), q(1, 1)],
        ys: vec![q(0, 1), q(1, 2), q(5, 8), q(3, 4), q(1, 1)],
    }
}

/// Image of `t` under the word read as `l_1 ∘ l_2 ∘ … ∘ l_k`.
fn word_image(w: &Word, t: &Q) -> Q {
    let gens = [x0(), x1()];
    w.letters().iter().rev().fold(t.clone(), |acc, l| {
        let g = &gens[l.index];
        if l.inverted {
            g.inverse().eval(&acc)
        } else {
            g.eval(&acc)
        }
    })
}

/// Breakpoints of the subdivision encoded by a tree.
fn breakpoints(depths: &[u32]) -> Vec<Q> {
    let mut out = vec![q(0, 1)];
    for &d in depths {
        let last = out.last().unwrap().clone();
        out.push(last + Q::new(BigInt::from(1), BigInt::from(1) << d));
    }
    out
}

fn tree_map(p: &TreePair) -> Pl {
    Pl {
        xs: breakpoints(&p.domain().leaf_depths()),
        ys: breakpoints(&p.range().leaf_depths()),
    }
}

fn sample_points() -> Vec<Q> {
    (0..=64).map(|i| q(i, 64)).chain([q(1, 3), q(5, 7), q(99, 100)]).collect()
}

fn f(word: &str) -> CanonicalElement {
    GroupBackend::Thompson.element_from_word(&Word::parse(word).unwrap()).unwrap()
}

fn pair(e: &CanonicalElement) -> &TreePair {
    match e.payload() {
        Payload::Tree(p) => p,
        _ => unreachable!(),
    }
}

fn letters(rank: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0..rank, any::<bool>()), 0..12)
        .prop_map(|v| Word::new(v.into_iter().map(|(i, inv)| GeneratorLetter::new(i, inv)).collect()))
}

#[test]
fn relators_are_identity_maps() {
    for w in ["Ab aBA Ba abA", "Ab aaBAA Ba aabAA"] {
        let w = Word::parse(w).unwrap();
        for t in sample_points() {
            assert_eq!(word_image(&w, &t), t);
        }
        assert!(GroupBackend::Thompson.element_from_word(&w).unwrap().is_identity());
    }
}

#[test]
fn ab_and_ba_move_dyadic_points_differently() {
    let (ab, ba) = (Word::parse("AB").unwrap(), Word::parse("BA").unwrap());
    let moved: Vec<bool> = [q(1, 4), q(1, 2), q(3, 4)]
        .iter()
        .map(|t| word_image(&ab, t) != word_image(&ba, t))
        .collect();
    assert!(moved.iter().any(|&m| m));
    assert_ne!(f("AB").key(), f("BA").key());
}

#[test]
fn generators_are_the_expected_maps() {
    for (w, g) in [("A", x0()), ("B", x1())] {
        let m = tree_map(pair(&f(w)));
        for t in sample_points() {
            assert_eq!(m.eval(&t), g.eval(&t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tree_pairs_agree_with_interval_maps(w in letters(2)) {
        let e = GroupBackend::Thompson.element_from_word(&w).unwrap();
        let m = tree_map(pair(&e));
        for t in sample_points() {
            prop_assert_eq!(m.eval(&t), word_image(&w, &t));
        }
    }

    #[test]
    fn keys_separate_distinct_maps(a in letters(2), b in letters(2)) {
        let (ea, eb) = (
            GroupBackend::Thompson.element_from_word(&a).unwrap(),
            GroupBackend::Thompson.element_from_word(&b).unwrap(),
        );
        let same_map = sample_points().iter().all(|t| word_image(&a, t) == word_image(&b, t));
        if ea.key() == eb.key() {
            prop_assert!(same_map);
        }
        // Equal maps on all sample points and distinct keys would be a
        // failure of canonicity; the sample is dense enough for short words.
        if same_map {
            prop_assert_eq!(ea.key(), eb.key());
        }
    }

    #[test]
    fn results_are_reduced(w in letters(2)) {
        let e = GroupBackend::Thompson.element_from_word(&w).unwrap();
        prop_assert!(pair(&e).is_reduced());
        prop_assert_eq!(pair(&e).clone().reduce(), pair(&e).clone());
    }

    #[test]
    fn parenthesization_does_not_matter(w in letters(2), split in 0usize..12) {
        let g = GroupBackend::Thompson;
        let ls = w.letters();
        let k = split.min(ls.len());
        let left = g.element_from_word(&Word::new(ls[..k].to_vec())).unwrap();
        let right = g.element_from_word(&Word::new(ls[k..].to_vec())).unwrap();
        let mut right_fold = g.identity();
        for l in ls.iter().rev() {
            right_fold = g.multiply(&g.letter(*l).unwrap(), &right_fold).unwrap();
        }
        let whole = g.element_from_word(&w).unwrap();
        prop_assert_eq!(g.multiply(&left, &right).unwrap().key(), whole.key());
        prop_assert_eq!(right_fold.key(), whole.key());
    }
}

fn backends() -> Vec<GroupBackend> {
    vec![
        GroupBackend::Thompson,
        GroupBackend::Free { rank: 2 },
        GroupBackend::Free { rank: 3 },
        GroupBackend::Lattice { dim: 2 },
        GroupBackend::Lattice { dim: 3 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(which in 0usize..5, a in letters(2), b in letters(2), c in letters(2)) {
        let g = backends()[which];
        let e = |w: &Word| g.element_from_word(w).unwrap();
        let (x, y, z) = (e(&a), e(&b), e(&c));
        let m = |p: &CanonicalElement, q: &CanonicalElement| g.multiply(p, q).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &g.identity()), x.clone());
        prop_assert_eq!(m(&g.identity(), &x), x.clone());
        prop_assert!(m(&x, &g.invert(&x).unwrap()).is_identity());
        prop_assert_eq!(g.invert(&g.invert(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(g.invert(&m(&x, &y)).unwrap(), m(&g.invert(&y).unwrap(), &g.invert(&x).unwrap()));
        prop_assert_eq!(CanonicalElement::from_key(&x.key()).unwrap(), x);
    }

    #[test]
    fn free_identity_iff_stack_reduction_empties(w in letters(3)) {
        let mut stack: Vec<(usize, bool)> = Vec::new();
        for l in w.letters() {
            if stack.last() == Some(&(l.index, !l.inverted)) {
                stack.pop();
            } else {
                stack.push((l.index, l.inverted));
            }
        }
        let e = GroupBackend::Free { rank: 3 }.element_from_word(&w).unwrap();
        prop_assert_eq!(e.is_identity(), stack.is_empty());
        if let Payload::Free(fw) = e.payload() {
            let got: Vec<(usize, bool)> = fw.letters().iter().map(|l| (l.index, l.inverted)).collect();
            prop_assert_eq!(got, stack);
        }
    }

    #[test]
    fn lattice_is_coordinate_sum(a in letters(3), b in letters(3)) {
        let g = GroupBackend::Lattice { dim: 3 };
        let (x, y) = (g.element_from_word(&a).unwrap(), g.element_from_word(&b).unwrap());
        prop_assert_eq!(g.multiply(&x, &y).unwrap(), g.multiply(&y, &x).unwrap());
        let mut v = vec![0i64; 3];
        for l in a.letters() {
            v[l.index] += if l.inverted { -1 } else { 1 };
        }
        prop_assert_eq!(x.payload(), &Payload::Lattice(v));
    }
}

#[test]
fn letters_outside_the_alphabet_are_usage_errors() {
    let w = Word::parse("AC").unwrap();
    assert_eq!(GroupBackend::Thompson.element_from_word(&w).unwrap_err().exit_code(), 1);
    let a = f("A");
    let z = GroupBackend::Lattice { dim: 2 }.identity();
    assert_eq!(GroupBackend::Thompson.multiply(&a, &z).unwrap_err().exit_code(), 1);
}
