#![no_main]
use libfuzzer_sys::fuzz_target;
use planar_intervals::format::{parse_graph, parse_graph_json, write_graph_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_json(text) {
        let again = parse_graph_json(&write_graph_json(&g)).expect("own output parses");
        assert_eq!(g, again);
    }
    // format sniffing must never panic either
    let _ = parse_graph(text);
});
