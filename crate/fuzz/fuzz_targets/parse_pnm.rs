#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = qimg_core::imageio::parse_pnm(data) {
        assert!(img.pixels().iter().all(|&p| p <= img.max_value()));
        assert_eq!(
            img.pixels().len(),
            img.width() * img.height() * img.channels()
        );
    }
});
