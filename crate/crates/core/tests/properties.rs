use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use ybe_core::braces::{self, SkewBrace};
use ybe_core::catalog;
use ybe_core::enumerate::{self, EnumerationTask, Mode};
use ybe_core::format::{self, Record, SolutionRecord};
use ybe_core::solutions::{self, Solution};
use ybe_core::structgroup::{self, AffineElement, GroupElement, GroupWord, RationalSeries};
use ybe_core::Perm;

fn corpus() -> &'static [Solution] {
    static CORPUS: OnceLock<Vec<Solution>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut v: Vec<Solution> = enumerate::enumerate_solutions(&EnumerationTask::new(3, Mode::All))
            .unwrap()
            .solutions()
            .collect();
        v.extend(
            enumerate::enumerate_solutions(&EnumerationTask::new(4, Mode::Involutive))
                .unwrap()
                .solutions(),
        );
        v.push(catalog::five_point_level_three());
        v.push(catalog::eight_point_candidate());
        v
    })
}

fn brace_corpus() -> &'static [SkewBrace] {
    static CORPUS: OnceLock<Vec<SkewBrace>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (1..=8)
            .flat_map(|n| enumerate::enumerate_braces(n).unwrap())
            .map(|(_, b)| b)
            .collect()
    })
}

fn perm_of(n: usize, keys: &[u64]) -> Perm {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (keys[i % keys.len()].wrapping_mul(i as u64 + 1), i));
    Perm::from_images(idx).unwrap()
}

fn word_strategy(gens: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((1..=gens, any::<bool>()), 0..8).prop_map(|letters| {
        let text: Vec<String> = letters
            .iter()
            .map(|&(i, inv)| if inv { format!("{i}'") } else { i.to_string() })
            .collect();
        text.join(" ").parse().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_relabeling_invariant(pick in any::<prop::sample::Index>(), keys in prop::collection::vec(any::<u64>(), 8)) {
        let s = pick.get(corpus());
        let f = perm_of(s.size(), &keys);
        let t = s.relabel(&f);
        prop_assert_eq!(solutions::canonical_form(s), solutions::canonical_form(&t));
        let iso = solutions::is_isomorphic(s, &t).expect("relabeled copies are isomorphic");
        prop_assert_eq!(s.relabel(&iso), t);
    }

    #[test]
    fn invariants_survive_relabeling(pick in any::<prop::sample::Index>(), keys in prop::collection::vec(any::<u64>(), 8)) {
        let s = pick.get(corpus());
        let t = s.relabel(&perm_of(s.size(), &keys));
        prop_assert_eq!(solutions::analyze(s).unwrap(), solutions::analyze(&t).unwrap());
        prop_assert_eq!(solutions::from_canonical_form(&solutions::canonical_form(&t)).unwrap(),
                        solutions::canonical_labeling(s).1);
    }

    #[test]
    fn solution_records_round_trip(pick in any::<prop::sample::Index>()) {
        let s = pick.get(corpus());
        let rec = Record::Solution(SolutionRecord::from_solution(s));
        let back = format::parse_record(&format::to_json(&rec)).unwrap();
        prop_assert_eq!(&back, &rec);
        let Record::Solution(r) = back else { unreachable!() };
        prop_assert_eq!(&r.to_solution().unwrap(), s);
    }

    #[test]
    fn retraction_is_a_solution_quotient(pick in any::<prop::sample::Index>()) {
        let s = pick.get(corpus());
        prop_assume!(solutions::is_involutive(s));
        let classes = solutions::retraction_classes(s);
        let ret = solutions::retract(s).unwrap();
        prop_assert!(solutions::is_involutive(&ret));
        for x in 0..s.size() {
            for y in 0..s.size() {
                let (u, v) = s.r(x, y);
                prop_assert_eq!(ret.r(classes[x], classes[y]), (classes[u], classes[v]));
            }
        }
    }

    #[test]
    fn brace_relabeling_keeps_class(pick in any::<prop::sample::Index>(), keys in prop::collection::vec(any::<u64>(), 8)) {
        let b = pick.get(brace_corpus());
        let n = b.size();
        let tail = perm_of(n.max(2) - 1, &keys);
        let images: Vec<usize> = std::iter::once(0).chain((1..n).map(|i| tail.apply(i - 1) + 1)).collect();
        let f = Perm::from_images(images).unwrap();
        let c = b.relabel(&f);
        prop_assert_eq!(braces::brace_canonical_form(b), braces::brace_canonical_form(&c));
        prop_assert!(braces::brace_is_isomorphic(b, &c).is_some());
        prop_assert_eq!(braces::analyze(b), braces::analyze(&c));
    }

    #[test]
    fn brace_solutions_are_solutions(pick in any::<prop::sample::Index>()) {
        let b = pick.get(brace_corpus());
        let s = braces::solution_of(b);
        let (sigma, tau) = s.tables();
        let n = s.size();
        let rows = |t: &[usize]| t.chunks(n).map(<[usize]>::to_vec).collect::<Vec<_>>();
        prop_assert!(Solution::verify(n, rows(&sigma), rows(&tau)).is_ok());
        prop_assert_eq!(solutions::is_involutive(&s), b.is_abelian_type());
    }

    #[test]
    fn words_and_inverses(w in word_strategy(4)) {
        let gens = structgroup::affine_rep(&catalog::four_point_indecomposable()).unwrap();
        let u = structgroup::eval_affine(&gens, &w).unwrap();
        let v = structgroup::eval_affine(&gens, &w.inverse()).unwrap();
        prop_assert_eq!(u.op(&v), AffineElement::identity(4));
        prop_assert_eq!(u.inverse(), v);
        let reparsed: GroupWord = w.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, w);
    }

    #[test]
    fn series_guess_recovers_rational_functions(num in prop::collection::vec(-5i64..6, 1..4), k in 1usize..4) {
        prop_assume!(num[0] != 0);
        let mut denom = vec![BigInt::from(1)];
        for _ in 0..k {
            let mut next = vec![BigInt::from(0); denom.len() + 1];
            for (i, c) in denom.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            denom = next;
        }
        let series = RationalSeries { numerator: num.iter().map(|&v| BigInt::from(v)).collect(), denominator: denom };
        let values = series.expand(16);
        let guess = structgroup::guess_rational_series(&values).expect("enough terms");
        prop_assert_eq!(guess.expand(24), series.expand(24));
    }
}
