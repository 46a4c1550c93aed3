//! Running a CLI job in-process and reading the result document back.
//!
//! cargo run --example cli_job

use horocone::cli::{parse_output, run, Command, Document, JobSpec, Outcome, OutputFormat};

fn main() {
    let payload = r#"{
        "names": ["a", "b", "e2"],
        "descriptors": [
            {"g": [1, 0.5, 0]},
            {"g": [0.5, 1, 0]},
            {"g": [0, 0, 1]}
        ]
    }"#;
    let csv = run(&JobSpec { format: OutputFormat::Csv, ..JobSpec::new(Command::DetourTable, payload) });
    print!("{}", csv.output);

    let out = run(&JobSpec::new(Command::DetourTable, payload));
    match parse_output(&out.output).expect("documents re-parse") {
        Outcome::Ok(doc) => {
            if let Document::DetourTable(t) = *doc {
                println!("same part: {:?}", t.same_part);
                println!("singleton: {:?}", t.singleton);
            }
        }
        other => println!("exit {}: {other:?}", out.exit_code),
    }

    let bad = run(&JobSpec::new(Command::Classify, r#"{"g": [1, 0.5]}"#));
    print!("exit {}\n{}", bad.exit_code, bad.output);
}
