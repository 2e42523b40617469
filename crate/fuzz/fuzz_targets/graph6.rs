#![no_main]
use libfuzzer_sys::fuzz_target;
use planar_intervals::format::{decode_graph6, encode_graph6, parse_graph6_lines};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = decode_graph6(data) {
        let again = decode_graph6(encode_graph6(&g).as_bytes()).expect("own output decodes");
        assert_eq!(g, again);
    }
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_graph6_lines(text);
    }
});
