use proptest::prelude::*;
use qtf_core::factorization::{dos_decompose, DosConfig, DosResult};
use qtf_core::framelet::{coset_types, pl_transform};
use qtf_core::laurent::division::{division_case, ext_gcd};
use qtf_core::laurent::{sym_eea, sym_long_div};
use qtf_core::{Poly, SymType};

/// Symmetric polynomial z^m·(v0 + v1 z + … ) of length n with sign eps.
fn sym_poly(eps: i8, m: i64, n: usize, lead: i64, vals: &[i64]) -> Poly {
    let mut c = vec![0i64; n];
    c[0] = lead;
    for i in 1..n {
        c[i] = vals[i];
    }
    for i in 0..n / 2 {
        c[n - 1 - i] = i64::from(eps) * c[i];
    }
    if n % 2 == 1 && eps == -1 {
        c[n / 2] = 0;
    }
    Poly::from_ints(m, &c)
}

fn arb_sym(max_len: usize) -> impl Strategy<Value = Poly> {
    (prop_oneof![Just(1i8), Just(-1i8)], -3i64..=3, 1usize..=max_len, 1i64..=4, prop::bool::ANY, prop::collection::vec(-4i64..=4, max_len))
        .prop_filter_map("nonzero", |(eps, m, n, lead, neg, vals)| {
            let lead = if neg { -lead } else { lead };
            let p = sym_poly(eps, m, n, lead, &vals);
            (!p.is_zero()).then_some(p)
        })
}

/// Equal up to a nonzero constant and a power of z.
fn associate(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let na = a.shift(-a.ldeg()).div_scalar(&a.lead());
    let nb = b.shift(-b.ldeg()).div_scalar(&b.lead());
    na == nb
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn long_division_contracts(a in arb_sym(9), b in arb_sym(6)) {
        let (ta, tb) = (a.sym_type().unwrap(), b.sym_type().unwrap());
        let d = sym_long_div(&a, &b).unwrap();
        prop_assert_eq!(&(&b * &d.q) + &d.r, a.clone());
        if !d.r.is_zero() {
            prop_assert_eq!(d.r.sym_type(), Some(ta));
            if division_case(ta, tb) == 4 {
                prop_assert!(d.r.len() <= b.len());
            } else {
                prop_assert!(d.r.len() < b.len());
            }
        }
        if !d.q.is_zero() {
            prop_assert_eq!(d.q.sym_type(), Some(ta.div(tb)));
        }
    }

    #[test]
    fn eea_identities(a in arb_sym(7), b in arb_sym(7), g in arb_sym(3)) {
        let (a, b) = (&a * &g, &b * &g);
        let (u, v, r) = sym_eea(&a, &b).unwrap();
        prop_assert_eq!(&(&a * &u) + &(&b * &v), r.clone());
        let (_, _, g0) = ext_gcd(&a, &b);
        prop_assert!(associate(&r, &g0));
        let tr = r.sym_type().unwrap();
        if !u.is_zero() {
            prop_assert_eq!(a.sym_type().unwrap().mul(u.sym_type().unwrap()), tr);
        }
        if !v.is_zero() {
            prop_assert_eq!(b.sym_type().unwrap().mul(v.sym_type().unwrap()), tr);
        }
        let (_, _, one) = ext_gcd(&u, &v);
        prop_assert!(one.is_unit());
    }

    #[test]
    fn coset_symmetry(u in arb_sym(9), l in -2i64..=2) {
        let t = u.sym_type().unwrap();
        let (u0, u1) = u.coset_split();
        prop_assert_eq!(Poly::coset_merge(&u0, &u1), u.clone());
        if t.c % 2 == 0 {
            let (t0, t1) = coset_types(t).unwrap();
            prop_assert!(u0.is_zero() || u0.has_type(t0));
            prop_assert!(u1.is_zero() || u1.has_type(t1));
        } else {
            let k = (t.c - 1) / 2 + l;
            let (p, m) = pl_transform(&u, l);
            prop_assert!(p.is_zero() || p.has_type(SymType::new(t.eps, k)));
            prop_assert!(m.is_zero() || m.has_type(SymType::new(-t.eps, k)));
        }
    }

    #[test]
    fn dos_witness_identity(u1 in arb_sym(4), u2 in arb_sym(4), k in -2i64..=2) {
        let u2 = u2.shift(k);
        let ty = u1.sym_type().unwrap().div(u2.sym_type().unwrap());
        let u = &(&u1 * &u1.star()) - &(&u2 * &u2.star());
        prop_assume!(!u.is_zero());
        match dos_decompose(&u, ty, &DosConfig::default()).unwrap() {
            DosResult::Exact(w) => prop_assert!(w.check(&u, ty)),
            DosResult::Approx { witness, residual } => {
                prop_assert!(residual <= 1e-25);
                prop_assert_eq!(witness.t1.div(witness.t2), ty);
            }
        }
    }
}
