use std::io::{self, ErrorKind, Write};

/// Stdout that exits quietly once the reader has gone away.
struct Stdout(io::StdoutLock<'static>);

impl Write for Stdout {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.write(buf).map_err(quiet_exit)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.0.flush().map_err(quiet_exit)
    }
}

fn quiet_exit(e: io::Error) -> io::Error {
    if e.kind() == ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    e
}

fn main() {
    let code = ringcode::cli::run(
        std::env::args_os(),
        &mut Stdout(io::stdout().lock()),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
