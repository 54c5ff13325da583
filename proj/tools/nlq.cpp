// nlq: ask questions of the restaurant database in plain English.
//
//   nlq --config data/schema.json                       interactive prompt
//   nlq --config data/schema.json --question "..."      one-shot
//   nlq --config data/schema.json --serve --port 8080   HTTP API
//
// Exit codes: 0 success, 1 configuration error, 2 runtime I/O error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nlq/http_api.hpp"
#include "nlq/query_service.hpp"
#include "nlq/repl.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Natural-language questions over a CSV-backed relational database"};

  nlq::AppConfig config;
  config.schema_path = "data/schema.json";
  std::string question;
  bool serve = false;
  bool json = false;

  app.add_option("--config", config.schema_path, "Schema config (JSON)")->capture_default_str();
  app.add_option("--data-dir", config.data_dir, "Directory holding <table>.csv (default: config dir)");
  app.add_option("--lexicon", config.lexicon_path, "POS lexicon (default: <data-dir>/lexicon.tsv)");
  app.add_flag("--serve", serve, "Serve the HTTP API");
  app.add_option("--port", config.port, "HTTP port")->capture_default_str()->check(CLI::Range(1, 65535));
  app.add_option("--question", question, "Answer one question and exit");
  app.add_flag("--trace", config.trace, "Print the mapping trace");
  app.add_flag("--json", json, "With --question, print the JSON response");
  app.get_formatter()->column_width(40);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::optional<nlq::Engine> engine;
  try {
    engine.emplace(nlq::Engine::load(config));
  } catch (const std::exception& e) {
    std::cerr << "nlq: " << e.what() << '\n';
    return 1;
  }
  for (const auto& w : engine->index().warnings()) std::cerr << "nlq: warning: " << w << '\n';

  if (serve) return nlq::serve_http(*engine, config.port) ? 0 : 2;

  if (app.count("--question")) {
    auto response = nlq::answer_question(question, *engine);
    if (json) {
      std::cout << nlq::dump_json(nlq::to_json(response), 2) << '\n';
    } else {
      nlq::print_response(std::cout, response, config.trace);
    }
    return std::cout ? 0 : 2;
  }

  return nlq::run_repl(*engine, std::cin, std::cout, config.trace);
}
