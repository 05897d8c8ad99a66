use std::process::ExitCode;

use clap::error::ErrorKind;
use facelab_cli::{execute, parse, render_pretty, run};

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("FACELAB_THREADS") {
        let built = threads
            .parse::<usize>()
            .map_err(|e| e.to_string())
            .and_then(|n| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| e.to_string())
            });
        if let Err(e) = built {
            eprintln!("facelab: FACELAB_THREADS={threads:?}: {e}");
            return ExitCode::FAILURE;
        }
    }

    let argv: Vec<String> = std::env::args().collect();
    let (result, pretty) = match parse(&argv) {
        Ok(cli) => (execute(&cli), cli.pretty),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(_) => (run(&argv), argv.iter().any(|a| a == "--pretty")),
    };
    if pretty {
        print!("{}", render_pretty(&result));
    } else {
        print!("{}", result.to_json());
    }
    if let Some(message) = &result.message {
        eprintln!("facelab {}: {message}", result.command);
    }
    ExitCode::from(result.exit_code() as u8)
}
