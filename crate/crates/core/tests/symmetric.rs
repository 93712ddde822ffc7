use std::collections::BTreeSet;

use proptest::prelude::*;

use qhecke::symmetric::{coset_decompose, enumerate, length, longest_element, Permutation};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// `v_k v_{k+1} ... v_{n-1}`, with `v_i` the simple transposition `(i, i+1)`.
fn coset_rep(n: usize, k: usize) -> Permutation {
    (k..n).fold(Permutation::identity(n), |acc, i| acc.mul_simple_right(i))
}

#[test]
fn enumeration_has_n_factorial_elements() {
    let mut fact = 1;
    for n in 1..=6 {
        fact *= n;
        let all = enumerate(n);
        assert_eq!(all.len(), fact);
        let distinct: BTreeSet<Vec<usize>> = all.iter().map(Permutation::images).collect();
        assert_eq!(distinct.len(), fact);
    }
}

#[test]
fn coset_decomposition_is_exhaustive() {
    for n in 1..=6 {
        for w in enumerate(n) {
            let (k, w1) = coset_decompose(&w);
            assert!((1..=n).contains(&k));
            assert_eq!(w1.degree(), n - 1);
            assert_eq!(coset_rep(n, k).mul(&w1.embed()), w, "w = {w}");
            assert_eq!(length(&w), (n - k) + length(&w1));
        }
    }
}

proptest! {
    #[test]
    fn length_is_inversion_invariant(w in perm(7)) {
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn longest_element_complements_length(w in perm(7)) {
        let n = w.degree();
        let w0 = longest_element(n);
        prop_assert_eq!(w0.mul(&w).length(), w0.length() - w.length());
        prop_assert_eq!(w0.length(), n * (n - 1) / 2);
    }

    #[test]
    fn reduced_words_rebuild(w in perm(7)) {
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        let rebuilt = word.iter().fold(Permutation::identity(w.degree()), |acc, &i| acc.mul_simple_right(i));
        prop_assert_eq!(rebuilt, w.clone());
        prop_assert_eq!(Permutation::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn composition_is_associative(a in perm(6), seed in any::<u64>()) {
        let n = a.degree();
        let all = enumerate(n);
        let b = &all[(seed as usize) % all.len()];
        let c = &all[(seed as usize / 7) % all.len()];
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    }
}
