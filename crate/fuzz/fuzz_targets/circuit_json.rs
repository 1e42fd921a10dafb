#![no_main]

use libfuzzer_sys::fuzz_target;
use qimg_core::export::{circuit_from_json, circuit_to_json, circuit_to_qasm};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(circuit) = circuit_from_json(text) else {
        return;
    };
    let again = circuit_from_json(&circuit_to_json(&circuit)).expect("own output parses");
    assert_eq!(again, circuit);
    // keep the lowering cheap: it grows exponentially with control count
    if circuit.gates().iter().all(|g| g.controls().len() <= 6) {
        let _ = circuit_to_qasm(&circuit);
    }
});
