use ellfive::cli::svg::{render_configuration, render_pattern};
use ellfive::lemmata::{figure_instance, run_script, Figure, Options, ScriptId};
use ellfive::tilings::{validate_pattern, PeriodicColoring};
use wasm_bindgen::prelude::*;

fn verify_summary(id: &str) -> Result<String, String> {
    let id: ScriptId = id.parse().map_err(|e: ellfive::Error| e.to_string())?;
    let options = Options {
        emit_certificates: false,
        ..Options::default()
    };
    let report = run_script(id, &options);
    let scripts: Vec<serde_json::Value> = report
        .scripts
        .iter()
        .map(|s| {
            serde_json::json!({
                "id": s.id,
                "status": s.status,
                "passed": s.obligations.iter().filter(|o| o.passed).count(),
                "total": s.obligations.len(),
                "obligations": s.obligations.iter().map(|o| serde_json::json!({
                    "id": o.id,
                    "passed": o.passed,
                    "statement": o.statement,
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(serde_json::json!({ "passed": report.passed, "scripts": scripts }).to_string())
}

fn figure_svg(name: &str, radius: i64) -> Result<String, String> {
    match name {
        "patternA" | "patternB" => {
            if !(1..=12).contains(&radius) {
                return Err("radius must be between 1 and 12".into());
            }
            let p = PeriodicColoring::by_name(name).map_err(|e| e.to_string())?;
            Ok(render_pattern(&p, radius))
        }
        _ => {
            let inst = figure_instance(name).map_err(|e| e.to_string())?;
            let fig = Figure::from_instance(&inst).map_err(|e| e.to_string())?;
            Ok(render_configuration(&fig.cfg, &fig.hypotheses))
        }
    }
}

fn validate_summary(
    pattern: &str,
    radius: i64,
    flip: Option<(i64, i64)>,
) -> Result<String, String> {
    let mut p = PeriodicColoring::by_name(pattern).map_err(|e| e.to_string())?;
    if let Some(node) = flip {
        p = p.with_flip(node);
    }
    let report = validate_pattern(&p, radius).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// Runs one proof script with its dependencies; returns a JSON summary.
#[wasm_bindgen]
pub fn verify(id: &str) -> Result<String, JsError> {
    verify_summary(id).map_err(|e| JsError::new(&e))
}

/// SVG for a figure (`fig1a` … `col2`) or a pattern patch (`patternA`, `patternB`).
#[wasm_bindgen]
pub fn render(name: &str, radius: i32) -> Result<String, JsError> {
    figure_svg(name, radius as i64).map_err(|e| JsError::new(&e))
}

/// Checks a pattern on a patch, optionally with the colour of node `(a, b)` flipped.
#[wasm_bindgen]
pub fn validate(pattern: &str, radius: i32, flip: bool, a: i32, b: i32) -> Result<String, JsError> {
    let node = flip.then_some((a as i64, b as i64));
    validate_summary(pattern, radius as i64, node).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_reports_dependencies() {
        let v: serde_json::Value = serde_json::from_str(&verify_summary("t7").unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["scripts"].as_array().unwrap().len(), 2);
        assert!(verify_summary("nosuch").is_err());
    }

    #[test]
    fn renders_figures_and_patterns() {
        assert!(figure_svg("fig3", 0).unwrap().contains("X″"));
        assert!(figure_svg("patternA", 4).unwrap().contains("class=\"red\""));
        assert!(figure_svg("patternA", 40).is_err());
        assert!(figure_svg("fig9", 0).is_err());
    }

    #[test]
    fn flipped_node_breaks_pattern() {
        let ok: serde_json::Value =
            serde_json::from_str(&validate_summary("B", 8, None).unwrap()).unwrap();
        assert_eq!(ok["pass"], true);
        let p = PeriodicColoring::pattern_b();
        let blue = ellfive::geometry::hex_patch(2)
            .into_iter()
            .find(|&n| p.color_of(n) == ellfive::configuration::Colour::Blue)
            .unwrap();
        let bad: serde_json::Value =
            serde_json::from_str(&validate_summary("B", 8, Some(blue)).unwrap()).unwrap();
        assert_eq!(bad["pass"], false);
        assert!(validate_summary("B", 3, None).is_err());
    }
}
