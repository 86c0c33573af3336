use std::io::{self, BufWriter, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = selfdual_cli::run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut io::stderr().lock());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
