#include "digitseq/seqgen.hpp"

#include <charconv>
#include <stdexcept>
#include <thread>

namespace digitseq {

std::vector<int> digits(u128 n, int q) {
  if (q < 2) throw std::invalid_argument("digits: base must be >= 2");
  std::vector<int> out;
  do {
    out.push_back(static_cast<int>(n % static_cast<u128>(q)));
    n /= static_cast<u128>(q);
  } while (n != 0);
  return out;
}

IndexMap IndexMap::affine(u128 a, u128 b) {
  if (a < 1) throw std::invalid_argument("affine map requires a >= 1");
  return {Kind::affine, a, b};
}

IndexMap IndexMap::parse(std::string_view text) {
  if (text == "id" || text == "identity") return identity();
  if (text == "square") return square();
  constexpr std::string_view prefix = "affine:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto rest = text.substr(prefix.size());
    const auto comma = rest.find(',');
    if (comma != std::string_view::npos) {
      const auto a = parse_u128(rest.substr(0, comma));
      const auto b = parse_u128(rest.substr(comma + 1));
      if (a && b) return affine(*a, *b);
    }
    throw std::invalid_argument("malformed affine map '" + std::string(text) + "' (use affine:a,b)");
  }
  throw std::invalid_argument("unknown index map '" + std::string(text) + "'");
}

u128 IndexMap::apply(u128 t) const {
  switch (kind) {
    case Kind::identity:
      if (t > kMaxArgument) break;
      return t;
    case Kind::affine:
      if (t > (kMaxArgument - b) / a || b > kMaxArgument) break;
      return a * t + b;
    case Kind::square:
      if (t > (u128{1} << 63)) break;
      return t * t;
  }
  throw std::out_of_range("index map value exceeds 2^126");
}

std::string IndexMap::describe() const {
  switch (kind) {
    case Kind::identity: return "id";
    case Kind::square: return "square";
    case Kind::affine: return "affine:" + to_string(a) + "," + to_string(b);
  }
  return "?";
}

DigitalFunction thue_morse() { return DigitalFunction::make(2, 1, {0, 1}, 2); }

DigitalFunction rudin_shapiro() { return DigitalFunction::make(2, 2, {0, 0, 0, 1}, 2); }

DigitalFunction digit_sum(int q, int modulus) {
  if (q < 2) throw std::invalid_argument("digit-sum requires q >= 2");
  std::vector<std::int64_t> table(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) table[static_cast<std::size_t>(x)] = x;
  return DigitalFunction::make(q, 1, std::move(table), modulus);
}

DigitalFunction block_ones(int length) {
  if (length < 1 || length > 24) throw std::invalid_argument("block-ones requires 1 <= L <= 24");
  std::vector<std::int64_t> table(std::size_t{1} << length, 0);
  table.back() = 1;
  return DigitalFunction::make(2, length, std::move(table), 2);
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw std::invalid_argument("malformed preset parameter '" + std::string(item) + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

DigitalFunction preset(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::vector<int> params =
      colon == std::string_view::npos ? std::vector<int>{} : parse_int_list(name.substr(colon + 1));
  if (head == "thue-morse" && params.empty()) return thue_morse();
  if (head == "rudin-shapiro" && params.empty()) return rudin_shapiro();
  if (head == "digit-sum") {
    if (params.size() != 2) throw std::invalid_argument("digit-sum preset needs q,m' parameters");
    return digit_sum(params[0], params[1]);
  }
  if (head == "block-ones") {
    if (params.size() != 1) throw std::invalid_argument("block-ones preset needs L parameter");
    return block_ones(params[0]);
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

SequenceStream::SequenceStream(DigitalFunction f, IndexMap map, u128 start)
    : f_(std::move(f)), map_(map), cursor_(start) {}

void SequenceStream::read(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  // Validate the last index up front so a failing read leaves the cursor untouched.
  map_.apply(cursor_ + (out.size() - 1));
  const std::int64_t mod = f_.modulus();
  for (auto& symbol : out) {
    symbol = static_cast<std::uint8_t>(mod_floor(eval_b(f_, map_.apply(cursor_)), mod));
    ++cursor_;
  }
}

std::vector<std::uint8_t> SequenceStream::read(std::size_t count) {
  std::vector<std::uint8_t> out(count);
  read(std::span<std::uint8_t>(out));
  return out;
}

std::vector<std::uint8_t> stream(const DigitalFunction& f, const IndexMap& map, u128 start,
                                 std::uint64_t count) {
  if (f.modulus() > 256) throw std::invalid_argument("stream: symbols need m' <= 256");
  SequenceStream s(f, map, start);
  return s.read(static_cast<std::size_t>(count));
}

std::vector<std::uint8_t> stream_parallel(const DigitalFunction& f, const IndexMap& map,
                                          u128 start, std::uint64_t count, int threads) {
  if (threads <= 1 || count < 4096) return stream(f, map, start, count);
  if (f.modulus() > 256) throw std::invalid_argument("stream: symbols need m' <= 256");
  if (count > 0) map.apply(start + (count - 1));
  std::vector<std::uint8_t> out(count);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min<std::uint64_t>(count, chunk * t);
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk);
    if (lo == hi) break;
    pool.emplace_back([&, lo, hi] {
      SequenceStream s(f, map, start + lo);
      s.read(std::span<std::uint8_t>(out.data() + lo, hi - lo));
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace digitseq
