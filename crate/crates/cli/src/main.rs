fn main() {
    std::process::exit(gconv_cli::run(std::env::args_os()));
}
