use posheaf::{
  cech::{canonical_cover, cech_complex, CechMode},
  corpus,
  field::{Field, PrimeField, Rationals},
  io::{self, Functor},
  linalg::{Matrix, Subspace},
  marginal::{brute_force_h0, default_max_degree, euler_char_sheaf, index_formula, pseudomarginal_dim},
  nerve::{nerve_complex, NerveMode},
  poset::{check_mobius, euler_char_hall, euler_char_mobius, mobius},
  presheaf::{check_condition_g, interaction_decomposition, Topology},
  sparse::SparseMatrix,
};
use proptest::prelude::*;

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
  (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..=2, c), r))
}

fn big_p() -> PrimeField { PrimeField::new(1_000_003).unwrap() }

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn grassmann_identity(a in small_matrix(6), b in small_matrix(6)) {
    let f = Rationals;
    let n = a.len().min(b.len());
    let sa = Subspace::span(&Matrix::from_i64(&f, &a[..n]));
    let sb = Subspace::span(&Matrix::from_i64(&f, &b[..n]));
    let lhs = sa.sum(&sb).unwrap().dim() + sa.intersect(&sb).unwrap().dim();
    prop_assert_eq!(lhs, sa.dim() + sb.dim());
  }

  #[test]
  fn rank_agrees_over_rationals_and_large_prime(a in small_matrix(6)) {
    let q = Matrix::from_i64(&Rationals, &a).rank();
    let p = Matrix::from_i64(&big_p(), &a).rank();
    prop_assert_eq!(q, p);
  }

  #[test]
  fn rank_nullity_and_kernel(a in small_matrix(7)) {
    let m = Matrix::from_i64(&Rationals, &a);
    let k = m.kernel_basis();
    prop_assert_eq!(m.rank() + k.dim(), m.cols());
    prop_assert!(m.mul(k.basis()).is_zero());
  }

  #[test]
  fn sparse_rank_matches_dense(a in small_matrix(7)) {
    let m = Matrix::from_i64(&Rationals, &a);
    let s = SparseMatrix::from_dense(&m);
    prop_assert_eq!(s.rank(), m.rank());
    prop_assert_eq!(s.to_dense(), m.clone());
    prop_assert_eq!(s.transpose().to_dense(), m.transpose());
  }

  #[test]
  fn rational_arithmetic(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
    let f = Rationals;
    let x = f.parse(&format!("{a}/{b}")).unwrap();
    let y = f.parse(&format!("{c}/{d}")).unwrap();
    prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x.clone());
    if !f.is_zero(&y) {
      prop_assert!(f.is_one(&f.mul(&y, &f.inv(&y).unwrap())));
    }
    prop_assert_eq!(f.parse(&f.format(&x)).unwrap(), x.clone());
    prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
  }

  #[test]
  fn mobius_identities(seed in any::<u64>(), n in 1usize..8) {
    let mut r = corpus::rng(seed);
    let p = corpus::random_poset(&mut r, n, 0.4);
    prop_assert!(check_mobius(&p, &mobius(&p)).is_ok());
    prop_assert_eq!(euler_char_hall(&p), euler_char_mobius(&p));
    let op = p.opposite();
    prop_assert_eq!(euler_char_mobius(&op), euler_char_mobius(&p));
  }

  #[test]
  fn condition_g_iff_decomposition(seed in any::<u64>()) {
    for v in corpus::presheaf_corpus(seed, 4) {
      let g = check_condition_g(&v);
      let d = interaction_decomposition(&v);
      prop_assert_eq!(g.holds, d.is_ok());
      if let Ok(d) = d {
        prop_assert!(d.verify(&v).is_ok());
        let s = d.dims();
        for a in 0..v.poset().len() {
          prop_assert_eq!(v.poset().down_set(a).iter().map(|&b| s[b]).sum::<usize>(), v.dim(a));
        }
      }
    }
  }

  #[test]
  fn differentials_square_to_zero(seed in any::<u64>()) {
    for v in corpus::presheaf_corpus(seed, 3) {
      let dual = corpus::dual_copresheaf(&v);
      let c = cech_complex(&canonical_cover(v.poset(), Topology::Upper), &v, 3, CechMode::Full).unwrap();
      prop_assert!(c.check_d_squared().is_ok());
      let n = nerve_complex(&dual, Topology::Lower, 3, NerveMode::Full).unwrap();
      prop_assert!(n.check_d_squared().is_ok());
      let a = nerve_complex(&dual, Topology::Lower, 3, NerveMode::Nondegenerate).unwrap();
      prop_assert_eq!(a.cohomology_dims(2).unwrap(), n.cohomology_dims(2).unwrap());
    }
  }

  #[test]
  fn sections_match_configuration_oracle(seed in any::<u64>()) {
    let mut r = corpus::rng(seed);
    for c in corpus::random_families(&mut r, 4, 7, 3) {
      prop_assert_eq!(brute_force_h0(&c.h, true, &Rationals).unwrap(), pseudomarginal_dim(&c.h, &Rationals));
      let e = euler_char_sheaf(&c.h, &Rationals, default_max_degree(&c.h)).unwrap();
      prop_assert_eq!(e.euler, index_formula(&c.h));
    }
  }

  #[test]
  fn functor_json_round_trip(seed in any::<u64>()) {
    let f = PrimeField::new(corpus::PRIME).unwrap();
    for v in corpus::presheaf_corpus(seed, 2) {
      let dual = Functor::Copresheaf(corpus::dual_copresheaf(&v));
      let v = Functor::Presheaf(v);
      for g in [v, dual] {
        let text = io::functor_to_value(&g).to_string();
        let back = io::parse_functor(&text, &f).unwrap();
        prop_assert_eq!(back, g);
      }
    }
  }
}
