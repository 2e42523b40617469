#![no_main]
use libfuzzer_sys::fuzz_target;
use planar_intervals::format::{parse_edge_list, write_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_edge_list(text) {
        // writing and re-reading must give the same graph
        let again = parse_edge_list(&write_edge_list(&g)).expect("own output parses");
        assert_eq!(g, again);
    }
});
