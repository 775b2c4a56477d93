use revring::rewrite::Strategy;
use revring::suite;

#[test]
fn transcripts_do_not_depend_on_the_strategy() {
    for id in [3, 5, 6] {
        let base = suite::run(id, Strategy::LeftmostLargest).to_string();
        for s in [Strategy::LeftmostLeftward, Strategy::Random(17)] {
            assert_eq!(suite::run(id, s).to_string(), base, "criterion {id}");
        }
    }
}

#[test]
fn transcripts_repeat() {
    assert_eq!(suite::run(9, Strategy::LeftmostLargest), suite::run(9, Strategy::LeftmostLargest));
}
