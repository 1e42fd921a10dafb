//! Replays the checked-in fuzz seeds and throws arbitrary bytes at every
//! parser entry point.

use std::path::{Path, PathBuf};

use proptest::prelude::*;
use qimg_core::export::{circuit_from_json, circuit_to_json};
use qimg_core::imageio::{parse_pnm, PnmImage};

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let bytes = std::fs::read(&path).unwrap();
            (path, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

fn pnm_round_trip(data: &[u8]) -> bool {
    match PnmImage::parse(data) {
        Ok(img) => {
            let bytes = img.encode();
            PnmImage::parse(&bytes).as_ref() == Ok(&img)
        }
        Err(_) => false,
    }
}

#[test]
fn pnm_seeds() {
    let mut accepted = 0;
    for (path, bytes) in seeds("parse_pnm").into_iter().chain(seeds("pnm_roundtrip")) {
        if parse_pnm(&bytes).is_ok() {
            accepted += 1;
            assert!(pnm_round_trip(&bytes), "{}", path.display());
        }
    }
    assert!(accepted >= 8);
}

#[test]
fn circuit_json_seeds() {
    let mut accepted = 0;
    for (path, bytes) in seeds("circuit_json") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(c) = circuit_from_json(&text) {
            accepted += 1;
            assert_eq!(
                circuit_from_json(&circuit_to_json(&c)).unwrap(),
                c,
                "{}",
                path.display()
            );
        }
    }
    assert!(accepted >= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn pnm_parser_never_panics(data in proptest::collection::vec(any::<u8>(), 0..64)) {
        let _ = parse_pnm(&data);
    }

    #[test]
    fn mutated_pnm_never_panics(
        seed in prop::sample::select(vec![
            b"P2 2 2 255 0 85 170 255".to_vec(),
            b"P5 2 1 65535\n\x01\x02\xff\xfe".to_vec(),
            b"P3\n# c\n1 1\n3\n3 2 3\n".to_vec(),
            b"P6 1 1 255\n\x01\x02\x03".to_vec(),
        ]),
        pos in any::<prop::sample::Index>(),
        byte in any::<u8>(),
    ) {
        let mut data = seed;
        let i = pos.index(data.len());
        data[i] = byte;
        if PnmImage::parse(&data).is_ok() {
            prop_assert!(pnm_round_trip(&data));
        }
    }

    #[test]
    fn json_import_never_panics(text in "\\PC{0,80}") {
        let _ = circuit_from_json(&text);
    }

    #[test]
    fn structured_json_never_panics(
        n in 0usize..30,
        kind in prop::sample::select(vec!["h", "x", "cnot", "mcx", "mcry", "classical_cnot", "zz"]),
        target in 0usize..32,
        control in 0usize..32,
        on in 0u8..3,
        angle in prop::option::of(-10.0f64..10.0),
        bit in prop::option::of(0u8..3),
    ) {
        let mut gate = format!(r#"{{"kind":"{kind}","targets":[{target}],"controls":[{{"qubit":{control},"on":{on}}}]"#);
        if let Some(a) = angle {
            gate.push_str(&format!(r#","angle":{a}"#));
        }
        if let Some(b) = bit {
            gate.push_str(&format!(r#","bit":{b}"#));
        }
        let doc = format!(r#"{{"schema":1,"num_qubits":{n},"gates":[{gate}}}]}}"#);
        if let Ok(c) = circuit_from_json(&doc) {
            prop_assert_eq!(circuit_from_json(&circuit_to_json(&c)).unwrap(), c);
        }
    }
}
