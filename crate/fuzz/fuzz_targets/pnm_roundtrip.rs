#![no_main]

use libfuzzer_sys::fuzz_target;
use qimg_core::imageio::PnmImage;

// Any accepted image must survive serialize -> parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(img) = PnmImage::parse(data) else {
        return;
    };
    let bytes = img.encode();
    let again = PnmImage::parse(&bytes).expect("canonical output parses");
    assert_eq!(again, img);
    assert_eq!(again.encode(), bytes);
});
