fn main() {
    std::process::exit(qspread::app::run(std::env::args_os()));
}
