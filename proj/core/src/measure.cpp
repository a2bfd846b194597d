#include "sparsebeam/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsebeam {

namespace {

constexpr std::uint64_t kCfoTag = 0xC0F0;
constexpr std::uint64_t kNoiseTag = 0x7015E;

}  // namespace

cplx steered_response(std::size_t n, double freq, double path_freq) {
  const double delta = 2.0 * kPi * (path_freq - freq) / static_cast<double>(n);
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) acc += std::polar(1.0, delta * static_cast<double>(m));
  return acc / std::sqrt(static_cast<double>(n));
}

CVec path_responses(const ChannelInstance& ch, const PhasePattern& pattern, Side side) {
  if (pattern.n() != ch.n()) throw std::invalid_argument("path_responses: size mismatch");
  FourierContext ctx(ch.n());
  CVec out;
  out.reserve(ch.paths().size());
  for (const auto& p : ch.paths()) {
    const CVec v = ctx.steering_at(side == Side::rx ? p.rx_freq : p.tx_freq);
    out.push_back(pattern.apply(v));
  }
  return out;
}

cplx combine(const ChannelInstance& ch, std::span<const cplx> rx, std::span<const cplx> tx) {
  const auto paths = ch.paths();
  if (rx.size() != paths.size() || (ch.two_sided() && tx.size() != paths.size())) {
    throw std::invalid_argument("combine: one response per path required");
  }
  cplx z{0.0, 0.0};
  for (std::size_t k = 0; k < paths.size(); ++k) {
    cplx term = paths[k].gain * rx[k];
    if (ch.two_sided()) term *= tx[k];
    z += term;
  }
  return z;
}

Link::Link(const ChannelInstance& channel, std::optional<std::uint64_t> cfo_key)
    : channel_(channel),
      sigma_(std::sqrt(channel.noise_variance() / 2.0)),
      cfo_(cfo_key.value_or(mix_seed(channel.seed(), kCfoTag))),
      noise_(mix_seed(channel.seed(), kNoiseTag)) {}

double Link::measure_response(cplx z) {
  const std::uint64_t frame = frame_++;
  if (sigma_ > 0.0) {
    double w0 = 0.0, w1 = 0.0;
    noise_.normal_pair(frame, w0, w1);
    z += cplx{sigma_ * w0, sigma_ * w1};
  }
  const cplx rotated = std::polar(1.0, 2.0 * kPi * cfo_.uniform(frame)) * z;
  return std::abs(rotated);
}

double Link::measure_one(const PhasePattern& pattern) {
  if (channel_.two_sided()) throw std::logic_error("measure_one: channel is two-sided");
  return measure_response(combine(channel_, path_responses(channel_, pattern, Side::rx)));
}

double Link::measure_pair(const PhasePattern& rx, const PhasePattern& tx) {
  if (!channel_.two_sided()) throw std::logic_error("measure_pair: channel is one-sided");
  return measure_response(combine(channel_, path_responses(channel_, rx, Side::rx),
                                  path_responses(channel_, tx, Side::tx)));
}

std::vector<double> MeasurementSet::row_sums() const {
  std::vector<double> s(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) s[i] += values[i * cols + j];
  }
  return s;
}

std::vector<double> MeasurementSet::col_sums() const {
  std::vector<double> s(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) s[j] += values[i * cols + j];
  }
  return s;
}

MeasurementSet MeasurementSet::transposed() const {
  MeasurementSet t = *this;
  t.rows = cols;
  t.cols = rows;
  std::swap(t.hash_id, t.tx_hash_id);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t.values[j * rows + i] = values[i * cols + j];
  }
  return t;
}

MeasurementSet measure_hash(const HashFunction& hash, Link& link) {
  const auto& ch = link.channel();
  if (hash.n() != ch.n()) throw std::invalid_argument("measure_hash: size mismatch");
  MeasurementSet ms;
  ms.rows = 1;
  ms.cols = hash.b_count();
  ms.hash_id = hash.id();
  ms.values.reserve(ms.cols);
  const std::uint64_t before = link.frames_used();
  for (const auto& pattern : hash.patterns()) {
    const CVec rx = path_responses(ch, pattern, Side::rx);
    if (ch.two_sided()) {
      // An omnidirectional far end contributes unit response on every path.
      const CVec ones(rx.size(), cplx{1.0, 0.0});
      ms.values.push_back(link.measure_response(combine(ch, rx, ones)));
    } else {
      ms.values.push_back(link.measure_response(combine(ch, rx)));
    }
  }
  ms.frames_used = link.frames_used() - before;
  return ms;
}

MeasurementSet measure_two_sided(const HashFunction& rx, const HashFunction& tx, Link& link) {
  const auto& ch = link.channel();
  if (!ch.two_sided()) throw std::logic_error("measure_two_sided: channel is one-sided");
  if (rx.n() != ch.n() || tx.n() != ch.n()) throw std::invalid_argument("measure_two_sided: size mismatch");
  if (rx.b_count() != tx.b_count()) throw std::invalid_argument("measure_two_sided: hashes must share B");
  const std::size_t b = rx.b_count();
  std::vector<CVec> rx_resp, tx_resp;
  rx_resp.reserve(b);
  tx_resp.reserve(b);
  for (const auto& p : rx.patterns()) rx_resp.push_back(path_responses(ch, p, Side::rx));
  for (const auto& p : tx.patterns()) tx_resp.push_back(path_responses(ch, p, Side::tx));

  MeasurementSet ms;
  ms.rows = b;
  ms.cols = b;
  ms.hash_id = rx.id();
  ms.tx_hash_id = tx.id();
  ms.values.reserve(b * b);
  const std::uint64_t before = link.frames_used();
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      ms.values.push_back(link.measure_response(combine(ch, rx_resp[i], tx_resp[j])));
    }
  }
  ms.frames_used = link.frames_used() - before;
  return ms;
}

MeasurementSet measure_hash(const HashFunction& hash, const ChannelInstance& channel) {
  Link link(channel);
  return measure_hash(hash, link);
}

MeasurementSet measure_two_sided(const HashFunction& rx, const HashFunction& tx,
                                 const ChannelInstance& channel) {
  Link link(channel);
  return measure_two_sided(rx, tx, link);
}

}  // namespace sparsebeam
