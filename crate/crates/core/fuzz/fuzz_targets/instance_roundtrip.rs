#![no_main]

use libfuzzer_sys::fuzz_target;
use toeplitz_syzygy::{FieldKind, InstanceFile, Rational, Real};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(inst) = InstanceFile::from_json(text) else { return };
    let again = match inst.field {
        FieldKind::Rational => {
            let t = inst.matrix::<Rational>().unwrap();
            let g = inst.rhs_vector::<Rational>().unwrap();
            InstanceFile::from_matrix(&t, g.as_deref())
        }
        FieldKind::Float => {
            let t = inst.matrix::<Real>().unwrap();
            let g = inst.rhs_vector::<Real>().unwrap();
            InstanceFile::from_matrix(&t, g.as_deref())
        }
    };
    let text = again.to_json();
    assert_eq!(InstanceFile::from_json(&text).unwrap(), again);
});
