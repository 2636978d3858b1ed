use proptest::prelude::*;

use wss_codes::codes::{classify, weight_distribution_enumerate, CyclicCode, WeightDistribution, DEFAULT_BUDGET};
use wss_codes::inverse::{construct, Case};
use wss_codes::pell::{fundamental_unit, recurrence_from_unit};
use wss_codes::quadpoly::{hensel_lift, poly_order, MonicQuadratic};
use wss_codes::recurrence::{period, wss_test};
use wss_codes::tables::{run_table, HarnessOptions, TableRecord};

#[test]
fn unit_to_classified_code() {
    let spec = recurrence_from_unit(&fundamental_unit(8).unwrap());
    assert!(wss_test(&spec, 13).unwrap().is_wss);
    let code = CyclicCode::from_recurrence(&spec, 13).unwrap();
    let wd = weight_distribution_enumerate(&code, DEFAULT_BUDGET).unwrap();
    assert_eq!(wd.to_string(), "24:84,28:84");
    let report = classify(&code, &wd).unwrap();
    assert_eq!(report.label, "4-MDS");
    assert_eq!(report.quotient_params, Some((7, 2, 6)));

    // the lifted code has the same length and reduces onto the field code
    let lifted = CyclicCode::from_recurrence(&spec, 169).unwrap();
    assert_eq!(lifted.length(), 28);
    assert_eq!(lifted.reduce_mod_p().unwrap().check(), code.check());
    let big = weight_distribution_enumerate(&lifted, DEFAULT_BUDGET).unwrap();
    assert_eq!(big.frequencies(), [1176, 27384]);
}

#[test]
fn certificate_code_is_mds() {
    let c = construct(31, Case::Reducible, Some(30), None).unwrap();
    let code = CyclicCode::from_recurrence(&c.spec(), 31).unwrap();
    let wd = weight_distribution_enumerate(&code, DEFAULT_BUDGET).unwrap();
    assert_eq!(wd.min_distance(), Some(29));
    assert!(classify(&code, &wd).unwrap().is_mds);
}

#[test]
fn serde_round_trips() {
    let h: MonicQuadratic = "x^2+29x+19 (mod 49)".parse().unwrap();
    let json = serde_json::to_string(&h).unwrap();
    assert_eq!(json, "\"x^2+29x+19 (mod 49)\"");
    assert_eq!(serde_json::from_str::<MonicQuadratic>(&json).unwrap(), h);

    let wd = WeightDistribution::parse("5:288,6:2112", 6, 49).unwrap();
    let back: WeightDistribution = serde_json::from_str(&serde_json::to_string(&wd).unwrap()).unwrap();
    assert_eq!(back, wd);

    let cert = construct(7, Case::Irreducible, None, None).unwrap();
    let value = serde_json::to_value(&cert).unwrap();
    assert_eq!(value["H"], "x^2+29x+48 (mod 49)");
    assert_eq!(value["case"], "irreducible");
}

#[test]
fn table_records_round_trip_through_csv() {
    let opts = HarnessOptions { budget: 50_000_000, ..HarnessOptions::default() };
    let records: Vec<TableRecord> = run_table(1, &opts).unwrap().iter().map(|r| r.record()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &records {
        w.serialize(r).unwrap();
    }
    let bytes = w.into_inner().unwrap();
    let back: Vec<TableRecord> = csv::Reader::from_reader(bytes.as_slice()).deserialize().map(Result::unwrap).collect();
    assert_eq!(back, records);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The lift of an order-n divisor keeps the order, and its code is free.
    #[test]
    fn lifted_codes_are_free(p in prop::sample::select(vec![5u64, 7, 11, 13]), a1 in 0i64..13, a0 in 1i64..13) {
        prop_assume!(a0 % p as i64 != 0);
        let h = MonicQuadratic::new(a1, a0, p).unwrap();
        prop_assume!(!h.discriminant().is_zero());
        let n = poly_order(&h).unwrap();
        let lifted = hensel_lift(&h, n).unwrap();
        prop_assert_eq!(poly_order(&lifted).unwrap(), n);
        let code = CyclicCode::from_check(&lifted).unwrap();
        let wd = weight_distribution_enumerate(&code, DEFAULT_BUDGET).unwrap();
        prop_assert!(wd.satisfies_pless());
    }

    /// The code of a recurrence is exactly one period long.
    #[test]
    fn periods_match_check_orders(p in prop::sample::select(vec![5u64, 7, 11, 13, 17]), a in -30i64..30, b in -30i64..30) {
        prop_assume!(b.rem_euclid(p as i64) != 0);
        let spec = wss_codes::recurrence::RecurrenceSpec::new(a, b);
        let k = period(&spec, p).unwrap();
        let code = CyclicCode::from_recurrence(&spec, p).unwrap();
        prop_assert_eq!(code.length(), k);
    }
}
