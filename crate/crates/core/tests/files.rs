use revring::format::{parse_presentation, parse_skew, print_presentation, print_skew};
use revring::graded::associated_graded;
use revring::presets::{self, Preset};

#[test]
fn every_named_preset_round_trips() {
    for spec in ["V", "Vt", "Wq(4)", "WQ", "T5", "T1", "T6", "Tq(3/2)", "Tq", "Tq_abc(1, 1, 1)", "T6_quot(0)", "Ut", "OQ"] {
        match presets::by_name(spec, false).unwrap() {
            Preset::System(s) => {
                let text = print_presentation(&s);
                let back = parse_presentation(&text).unwrap();
                assert_eq!(print_presentation(&back), text, "{spec}");
                assert_eq!(back.relations(), s.relations(), "{spec}");
            }
            Preset::Skew(c) => {
                let text = print_skew(&c);
                assert_eq!(parse_skew(&text).unwrap(), c, "{spec}");
            }
        }
    }
}

#[test]
fn graded_systems_round_trip() {
    let gr = associated_graded(&presets::t6(), &presets::t6_degree()).unwrap().system;
    let text = print_presentation(&gr);
    assert_eq!(parse_presentation(&text).unwrap().relations(), gr.relations());
}

#[test]
fn hand_written_file() {
    let text = "\
# the quantum plane
algebra plane
scalars laurent Q
generators x y
order dlex
relations
Q*y*x = x*y
";
    let s = parse_presentation(text).unwrap();
    assert_eq!(s.to_string(), "x*y -> Q*y*x\n");
    assert!(s.check_confluence().unwrap().confluent);
}

#[test]
fn syntax_errors_report_positions() {
    let e = parse_presentation("generators a b\nrelations\na*b -> b*a +\n").unwrap_err();
    assert_eq!(e.line, 3);
    let e = parse_skew("skew S\nbase y\nalpha y +* 1\nalpha_inv y - 1\ngamma -y\n").unwrap_err();
    assert_eq!(e.line, 3);
}
