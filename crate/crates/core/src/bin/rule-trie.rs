use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(rule_trie::cli::main_with_args(std::env::args_os()))
}
