//! `botscope validate-bundle`: re-hash every file a bundle manifest lists.

use crate::args::ValidateArgs;
use crate::error::CliError;
use crate::manifest::validate_bundle;

pub fn run(args: ValidateArgs) -> Result<(), CliError> {
    let problems = validate_bundle(&args.bundle)?;
    if problems.is_empty() {
        eprintln!("bundle OK: {}", args.bundle.display());
        Ok(())
    } else {
        for p in &problems {
            eprintln!("mismatch: {p}");
        }
        Err(CliError::data(format!(
            "{} file(s) failed verification in {}",
            problems.len(),
            args.bundle.display()
        )))
    }
}
