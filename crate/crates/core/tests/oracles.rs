mod common;

use beilinson::cyclic::{CyclicPipeline, Variant};
use beilinson::derham::{de_rham_complex, AlgebraPresentation};
use beilinson::hochschild::Hochschild;

use common::bar::{self, Bar, MonomialAlgebra};
use common::counting::omega;

fn betti(c: &beilinson::complexes::ChainComplex, n: i64, w: u32) -> usize {
    if c.in_window(n) {
        c.betti(n, w).unwrap()
    } else {
        0
    }
}

#[test]
fn truncated_hochschild_matches_the_bar_complex() {
    for m in [2u32, 3] {
        let cap = 4;
        let h = Hochschild::new(&AlgebraPresentation::truncated("x", m), cap).unwrap();
        for w in 0..=cap {
            let mut oracle = Bar::new(MonomialAlgebra::truncated(m), w);
            for n in 0..=cap as i64 + 1 {
                assert_eq!(betti(h.complex(), n, w), oracle.hh(n), "x^{m}: HH_{n}({w})");
            }
        }
    }
}

#[test]
fn dual_numbers_pattern() {
    let h = Hochschild::new(&AlgebraPresentation::truncated("x", 2), 5).unwrap();
    for w in 1..=5u32 {
        for n in 0..=5 {
            let expected = usize::from(w % 2 == 1 && (n == w as i64 - 1 || n == w as i64));
            assert_eq!(betti(h.complex(), n, w), expected, "HH_{n}({w})");
        }
    }
}

#[test]
fn cyclic_homology_of_polynomials_matches_connes() {
    for (d, cap) in [(1usize, 3u32), (2, 2)] {
        let p = CyclicPipeline::new(&AlgebraPresentation::polynomial(d), cap).unwrap();
        let hc = p.model(Variant::Cyclic, 0, 4).unwrap();
        let neg = p.model(Variant::Negative, -4, 4).unwrap();
        for w in 0..=cap {
            let mut oracle = Bar::new(MonomialAlgebra::polynomial(d), w);
            for n in 0..=4 {
                assert_eq!(betti(hc.complex(), n, w), oracle.hc(n), "poly:{d} HC_{n}({w})");
            }
            for n in -4..=4 {
                assert_eq!(betti(neg.complex(), n, w), bar::hc_minus(&mut oracle, n), "poly:{d} HC⁻_{n}({w})");
            }
        }
    }
}

#[test]
fn de_rham_complex_of_polynomials() {
    for d in 1..=3usize {
        let cap = 4;
        let dr = de_rham_complex(&AlgebraPresentation::polynomial(d), cap).unwrap();
        let c = dr.complex();
        for w in 0..=cap {
            for i in 0..=d as i64 {
                assert_eq!(c.dim(i, w), omega(d, i, w));
                // the Poincaré lemma in each weight
                let h = c.cohomology(i, w).unwrap().dim();
                assert_eq!(h, usize::from(i == 0 && w == 0), "poly:{d} H^{i}({w})");
            }
        }
    }
}

#[test]
fn hkr_holds_in_large_characteristic() {
    let r = AlgebraPresentation::polynomial(2).with_field(beilinson::exactlin::Field::prime(7).unwrap());
    let h = Hochschild::new(&r, 4).unwrap();
    for w in 0..=4 {
        for p in 0..=2usize {
            let m = h.hkr_on_homology(p, w).unwrap();
            assert_eq!(m.rows(), omega(2, p as i64, w));
            assert_eq!(m.rank(), m.rows());
        }
    }
}

#[test]
fn stupid_sequence_is_short_exact() {
    let dr = de_rham_complex(&AlgebraPresentation::polynomial(2), 3).unwrap();
    for u in 0..=3 {
        assert!(dr.stupid_sequence(u).unwrap().is_short_exact(), "u = {u}");
    }
}
