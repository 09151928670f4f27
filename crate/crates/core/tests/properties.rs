use std::sync::Arc;

use proptest::prelude::*;

use cdiff::ddt::{CParam, Ddt};
use cdiff::funcs::{FuncSpec, LinearizedPoly};
use cdiff::gf::{make_field, FieldCtx};
use cdiff::quadext::{make_quadext, select_t, QuadExtCtx};

const FIELDS: [(u32, u32); 6] = [(2, 10), (2, 13), (3, 7), (5, 4), (7, 3), (31, 2)];

fn field(i: usize) -> FieldCtx {
    let (p, m) = FIELDS[i];
    make_field(p, m, None).unwrap()
}

fn quadext(p: u32, m: u32) -> QuadExtCtx {
    let base = make_field(p, m, None).unwrap();
    let t = select_t(&base, None).unwrap();
    make_quadext(Arc::new(base), t).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (x, y, z) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if y != 0 {
            prop_assert_eq!(f.mul(f.div(x, y).unwrap(), y), x);
        }
        prop_assert_eq!(f.pow(x, f.order() as u64), x);
    }

    #[test]
    fn linearized_polys_are_additive(
        i in 0..FIELDS.len(),
        terms in prop::collection::vec((any::<u32>(), 0u32..6), 1..4),
        a in any::<u32>(),
        b in any::<u32>(),
    ) {
        let f = field(i);
        let l = LinearizedPoly::new(terms.into_iter().map(|(c, k)| (c % f.order(), k)).collect());
        let (x, y) = (a % f.order(), b % f.order());
        prop_assert_eq!(l.eval(&f, f.add(x, y)), f.add(l.eval(&f, x), l.eval(&f, y)));
    }

    #[test]
    fn pair_map_is_a_ring_isomorphism(k in 0..3usize, u in any::<u32>(), v in any::<u32>()) {
        let (p, m) = [(2, 5), (3, 3), (7, 2)][k];
        let qe = quadext(p, m);
        let n = qe.q() * qe.q();
        let (u, v) = (u % n, v % n);
        let e = qe.ext();
        prop_assert_eq!(qe.phi_inv(qe.phi(u)), u);
        prop_assert_eq!(qe.phi(qe.biv_mul(u, v)), e.mul(qe.phi(u), qe.phi(v)));
        prop_assert_eq!(qe.phi(qe.biv_add(u, v)), e.add(qe.phi(u), qe.phi(v)));
    }

    #[test]
    fn nonvanishing_off_identity(k in 0..3usize, c1 in any::<u32>(), c2 in any::<u32>()) {
        let (p, m) = [(2, 7), (3, 5), (11, 2)][k];
        let qe = quadext(p, m);
        let (c1, c2) = (c1 % qe.q(), c2 % qe.q());
        prop_assume!((c1, c2) != (1, 0));
        prop_assert!(qe.check_nonvanishing(c1, c2));
    }

    #[test]
    fn random_tables_conserve_row_mass(
        table in prop::collection::vec(0u32..16, 16),
        c1 in 0u32..4,
        c2 in 0u32..4,
    ) {
        let qe = quadext(2, 2);
        let spec = FuncSpec::GenericBivariate { table: Arc::new(table) };
        let ddt = Ddt::new(&spec, &qe).unwrap();
        let rep = ddt.uniformity(CParam::Biv { c1, c2 }).unwrap();
        prop_assert!(rep.row_mass_ok(ddt.domain_size()));
        let rows = if (c1, c2) == (1, 0) { 15 } else { 16 };
        prop_assert_eq!(rep.rows(16), rows);
    }
}
