//! Job specification, execution and report emission for `dirac-kernel`.

pub mod commands;
pub mod job;
pub mod report;

pub use commands::{run, CliError};
pub use job::{Command, JobSpec, OutputFormat};
pub use report::{emit, Document};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// What a job writes and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn execute(job: &JobSpec) -> Outcome {
    match run(job) {
        Ok(doc) => Outcome {
            stdout: emit(&doc, job.output_format),
            stderr: String::new(),
            exit_code: if doc.pass { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        },
        Err(e) => {
            let body = serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } });
            Outcome { stdout: String::new(), stderr: report::to_json(&body), exit_code: EXIT_ERROR }
        }
    }
}
