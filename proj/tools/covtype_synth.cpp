#include <CLI11.hpp>

#include <cstdio>

#include "htledge/dataset.hpp"
#include "htledge/synthetic.hpp"

// Emits a CovType-format CSV with the library's frozen synthetic generator,
// for running the simulator where the real UCI file is not at hand.
int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic CovType-format dataset"};
  std::string out_path;
  htledge::SyntheticConfig cfg;
  app.add_option("--out", out_path, "output CSV path")->required();
  app.add_option("--per-class", cfg.per_class, "rows per class");
  app.add_option("--seed", cfg.seed, "generator seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    const htledge::Dataset d = htledge::make_synthetic_covtype(cfg);
    htledge::write_covtype_csv(d, out_path);
    std::printf("wrote %lld observations (%d per class) to %s\n",
                static_cast<long long>(d.size()), cfg.per_class, out_path.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
