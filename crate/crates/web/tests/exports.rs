use serde_json::Value;
use staircase_web::{classify_partition, eval_form, knit_svg, quiver_svg};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_reports_type_and_transpose() {
    let v = parse(&classify_partition("1,3,4"));
    assert_eq!(v["type"], "tame-concealed");
    assert_eq!(v["transpose"], "1,2^2,3");
    assert_eq!(v["consistent"], true);
    assert!(parse(&classify_partition("1,x")).get("error").is_some());
}

#[test]
fn form_evaluation() {
    assert_eq!(parse(&eval_form("2,2", "[[1,1],[1,1]]"))["q"], 1);
    assert_eq!(parse(&eval_form("3,6", "[[1,3,4,3,2,1],[2,3,2]]"))["q"], 0);
    assert!(parse(&eval_form("2,2", "[[1,1]]")).get("error").is_some());
}

#[test]
fn quiver_drawing_has_every_vertex_and_arrow() {
    let svg = quiver_svg("1,1,2,3", "");
    assert_eq!(svg.matches("<circle").count(), 7);
    assert_eq!(svg.matches("marker-end").count(), 7);
    assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    let labelled = quiver_svg("2", "[[3,4]]");
    assert!(labelled.contains(">3<") && labelled.contains(">4<"));
}

#[test]
fn knitting_drawing() {
    let svg = knit_svg("2,2", 0);
    assert_eq!(svg.matches("<circle").count(), 11);
    assert!(knit_svg("3,6", 0).contains("orbit quiver E8~"));
    assert!(knit_svg("4,6", 2).contains("slice limit"));
}
