use kummer_core::config::{CurveId, IntersectionTable};
use kummer_core::torsor::{calibrate, derive_r_diagonal, CalibrationMode, TorsorElement};
use kummer_field::RationalFunction as Rf;

#[test]
fn diagonal_calibration() {
    let table = IntersectionTable::standard();
    let sol = calibrate(&table, CalibrationMode::Diagonal).unwrap();
    eprintln!("{}", serde_json::to_string(&sol).unwrap());
    assert!(sol.free_parameters.is_empty());
    for b in 0..sol.branches.len() {
        let h = sol.h(b).unwrap();
        assert!(h.pow(4).is_identity());
        let fh = sol.f(b).unwrap().mul(&h.inverse());
        assert_eq!(fh, TorsorElement::new(Rf::s(), 0).unwrap());
    }
    assert_eq!(derive_r_diagonal(&table).unwrap(), Rf::s().pow(4));
}

#[test]
fn general_calibration_leaves_f3_scale_free() {
    let table = IntersectionTable::standard();
    let sol = calibrate(&table, CalibrationMode::General).unwrap();
    eprintln!("{}", serde_json::to_string(&sol).unwrap());
    assert_eq!(sol.free_parameters.len(), 1);
    assert_eq!(sol.free_parameters[0].0, CurveId::F3);
}
