//! Running a command programmatically and reading its JSON report.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = kfree::cli::run_with(["kfree", "census", "--n", "5", "--l", "3"], &mut out, &mut err);
    let report: serde_json::Value = serde_json::from_slice(&out).expect("json report");
    println!("exit {code}, schema {}, count {}", report["schema"], report["result"]["count"]);

    let code = kfree::cli::run_with(["kfree", "census", "--n", "10", "--l", "3"], &mut out, &mut err);
    println!("exit {code}: {}", String::from_utf8_lossy(&err).trim());
}
