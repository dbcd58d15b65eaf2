use std::io::Write;

fn main() {
    let out = braceforge::cli::run_args(std::env::args_os().skip(1));
    std::io::stdout().write_all(&out.stdout).expect("stdout");
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
