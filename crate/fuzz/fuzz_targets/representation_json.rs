#![no_main]
use libfuzzer_sys::fuzz_target;
use planar_intervals::verify::{confirm_witnesses, verify};
use planar_intervals::Representation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(rep) = Representation::from_json(text) else { return };
    let again = Representation::from_json(&rep.to_json()).expect("own output parses");
    assert_eq!(rep, again);
    if rep.interval_count() <= 64 && rep.vertex_ids().all(|v| v < 64) {
        let g = planar_intervals::verify::intersection_graph(&rep);
        let report = verify(&rep, &g, None);
        assert!(report.matches_target);
        assert!(confirm_witnesses(&rep, &report));
    }
});
