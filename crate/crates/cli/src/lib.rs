//! The `mild` command-line tool.

pub mod args;
mod commands;
pub mod report;

use clap::Parser;

pub use args::Cli;
pub use report::Report;

/// What one invocation prints and returns.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { exit_code: code, stdout, stderr, report: None };
        }
    };
    match commands::dispatch(&cli) {
        Ok(mut report) => {
            report.command = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
            let stdout = if cli.json { report.render_json() } else { report.render_text() };
            Outcome {
                exit_code: report.exit_code(),
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(e) => Outcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}
