use clap::Parser;

use liouvred::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            std::process::exit(code);
        }
    };
    let out = run(cli);
    if out.code != 0 {
        if let Some(m) = out.doc.get("message").and_then(|m| m.as_str()) {
            eprintln!("liouvred: {}", m);
        }
    }
    println!("{}", serde_json::to_string_pretty(&out.doc).expect("serializable"));
    std::process::exit(out.code);
}
