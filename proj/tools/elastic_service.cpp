// Local HTTP API for the curve editor. Binds 127.0.0.1 only.
//
//   elastic_service [--port N]      (default: $ELASTIC_PORT, else 8787)

#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "elastic/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Elastic curve HTTP service"};
  int port = 0;
  auto* port_opt = app.add_option("--port,-p", port, "Port to listen on")->check(CLI::Range(1, 65535));
  CLI11_PARSE(app, argc, argv);

  try {
    if (port_opt->count() == 0) port = elastic::service::port_from_env();
  } catch (const elastic::DomainError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  httplib::Server server;
  elastic::service::register_routes(server);
  std::cerr << "listening on http://127.0.0.1:" << port << "\n";
  if (!server.listen("127.0.0.1", port)) {
    std::cerr << "cannot bind 127.0.0.1:" << port << "\n";
    return 1;
  }
  return 0;
}
