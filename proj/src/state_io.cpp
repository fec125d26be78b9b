#include "ncqm/state_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "ncqm/error.hpp"

namespace ncqm {

static_assert(std::endian::native == std::endian::little, "state files assume a little-endian host");

void write_state(const std::string& path, const WaveFunction& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("state_io", "cannot open " + path);
  const GridSpec& g = f.grid();
  nlohmann::json h = {{"n1", g.n1}, {"n2", g.n2}, {"L1", g.L1}, {"L2", g.L2}};
  os << h.dump() << '\n';
  os.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(g.size() * sizeof(cplx)));
  if (!os) throw DomainError("state_io", "write failed for " + path);
}

WaveFunction read_state(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("state_io", "cannot open " + path);
  std::string line;
  std::getline(is, line);
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("state_io", std::string("bad header: ") + e.what());
  }
  GridSpec g{h.at("n1").get<int>(), h.at("n2").get<int>(), h.at("L1").get<double>(), h.at("L2").get<double>()};
  validate(g);
  std::vector<cplx> v(g.size());
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx)));
  if (is.gcount() != static_cast<std::streamsize>(v.size() * sizeof(cplx)))
    throw GridMismatch("state_io", "payload shorter than header implies");
  return WaveFunction(g, std::move(v));
}

}  // namespace ncqm
