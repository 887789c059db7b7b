#include "obo/model.hpp"

#include "obo/corpus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace obo {

ModelDims ModelParams::dims() const {
    ModelDims d;
    d.token_vocab_size = static_cast<std::size_t>(E_tok.rows());
    d.path_vocab_size = static_cast<std::size_t>(E_path.rows());
    d.embed_dim = static_cast<std::size_t>(E_tok.cols());
    return d;
}

bool ModelParams::operator==(const ModelParams& o) const {
    auto same = [](const auto& x, const auto& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
    };
    return same(E_tok, o.E_tok) && same(E_path, o.E_path) && same(W, o.W) && same(a, o.a) &&
           same(w_out, o.w_out) && b_out == o.b_out;
}

ModelParams zero_params(const ModelDims& dims) {
    if (dims.token_vocab_size == 0 || dims.path_vocab_size == 0 || dims.embed_dim == 0)
        throw std::invalid_argument("model dimensions must be positive");
    const auto tv = static_cast<Eigen::Index>(dims.token_vocab_size);
    const auto pv = static_cast<Eigen::Index>(dims.path_vocab_size);
    const auto e = static_cast<Eigen::Index>(dims.embed_dim);
    const auto c = static_cast<Eigen::Index>(dims.combined_dim());
    ModelParams p;
    p.E_tok = Matrix::Zero(tv, e);
    p.E_path = Matrix::Zero(pv, e);
    p.W = Matrix::Zero(c, c);
    p.a = Vector::Zero(c);
    p.w_out = Vector::Zero(c);
    p.b_out = 0.0;
    return p;
}

namespace {

template <typename M>
void xavier(M& m, double fan_in, double fan_out, Rng& rng) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    // data() walks row-major for Matrix and linearly for Vector
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-limit, limit);
}

}  // namespace

ModelParams init_params(const ModelDims& dims, Rng& rng) {
    ModelParams p = zero_params(dims);
    const double e = static_cast<double>(dims.embed_dim);
    const double c = static_cast<double>(dims.combined_dim());
    xavier(p.E_tok, static_cast<double>(dims.token_vocab_size), e, rng);
    xavier(p.E_path, static_cast<double>(dims.path_vocab_size), e, rng);
    xavier(p.W, c, c, rng);
    xavier(p.a, c, 1.0, rng);
    xavier(p.w_out, c, 1.0, rng);
    p.E_tok.row(kPadId).setZero();
    p.E_path.row(kPadId).setZero();
    return p;
}

ForwardTrace forward(const ModelParams& params, const std::vector<Triple>& triples, std::optional<Dropout> dropout) {
    const Eigen::Index e = params.E_tok.cols();
    const Eigen::Index c = 3 * e;
    const auto n = static_cast<Eigen::Index>(triples.size());
    ForwardTrace t;
    t.triples = triples;
    t.active.resize(triples.size());

    bool any = false;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& tr = triples[i];
        if (tr.source < 0 || tr.target < 0 || tr.source >= params.E_tok.rows() || tr.target >= params.E_tok.rows())
            throw InvalidId("token id out of range");
        if (tr.path < 0 || tr.path >= params.E_path.rows()) throw InvalidId("path id out of range");
        t.active[i] = !(tr.source == kPadId && tr.path == kPadId && tr.target == kPadId);
        any = any || t.active[i];
    }
    if (!any) throw std::invalid_argument("example has no contexts");

    t.X.resize(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Triple& tr = triples[static_cast<std::size_t>(i)];
        t.X.block(i, 0, 1, e) = params.E_tok.row(tr.source);
        t.X.block(i, e, 1, e) = params.E_path.row(tr.path);
        t.X.block(i, 2 * e, 1, e) = params.E_tok.row(tr.target);
    }
    if (dropout) {
        if (!(dropout->p >= 0.0 && dropout->p < 1.0) || dropout->rng == nullptr)
            throw std::invalid_argument("dropout needs 0 <= p < 1 and a random stream");
        const double keep = 1.0 / (1.0 - dropout->p);
        t.mask.resize(n, c);
        for (Eigen::Index k = 0; k < t.mask.size(); ++k)
            t.mask.data()[k] = dropout->rng->uniform() < dropout->p ? 0.0 : keep;
        t.X = t.X.cwiseProduct(t.mask);
    }

    t.C = (t.X * params.W.transpose()).array().tanh().matrix();
    t.logits = t.C * params.a;

    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
        if (t.active[static_cast<std::size_t>(i)]) top = std::max(top, t.logits[i]);
    t.alpha = Vector::Zero(n);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!t.active[static_cast<std::size_t>(i)]) continue;
        t.alpha[i] = std::exp(t.logits[i] - top);
        sum += t.alpha[i];
    }
    t.alpha /= sum;

    t.v = t.C.transpose() * t.alpha;
    t.z = params.w_out.dot(t.v) + params.b_out;
    t.p = t.z >= 0 ? 1.0 / (1.0 + std::exp(-t.z)) : std::exp(t.z) / (1.0 + std::exp(t.z));
    return t;
}

Gradients::Gradients(const ModelDims& dims) {
    const auto c = static_cast<Eigen::Index>(dims.combined_dim());
    W = Matrix::Zero(c, c);
    a = Vector::Zero(c);
    w_out = Vector::Zero(c);
}

namespace {

void add_rows(std::map<std::int32_t, Vector>& into, const std::map<std::int32_t, Vector>& from) {
    for (const auto& [id, row] : from) {
        auto [it, fresh] = into.try_emplace(id, row);
        if (!fresh) it->second += row;
    }
}

}  // namespace

void Gradients::add(const Gradients& g) {
    add_rows(tok_rows, g.tok_rows);
    add_rows(path_rows, g.path_rows);
    W += g.W;
    a += g.a;
    w_out += g.w_out;
    b_out += g.b_out;
}

void Gradients::scale(double s) {
    for (auto& [id, row] : tok_rows) row *= s;
    for (auto& [id, row] : path_rows) row *= s;
    W *= s;
    a *= s;
    w_out *= s;
    b_out *= s;
}

bool Gradients::all_finite() const {
    for (const auto& [id, row] : tok_rows)
        if (!row.allFinite()) return false;
    for (const auto& [id, row] : path_rows)
        if (!row.allFinite()) return false;
    return W.allFinite() && a.allFinite() && w_out.allFinite() && std::isfinite(b_out);
}

Gradients backward(const ModelParams& params, const ForwardTrace& t, int label) {
    Gradients g(params.dims());
    accumulate_backward(params, t, label, g);
    return g;
}

void accumulate_backward(const ModelParams& params, const ForwardTrace& t, int label, Gradients& g) {
    const Eigen::Index e = params.E_tok.cols();

    const double dz = t.p - static_cast<double>(label);
    g.w_out += dz * t.v;
    g.b_out += dz;
    const Vector dv = dz * params.w_out;

    const Vector dalpha = t.C * dv;
    Matrix dC = t.alpha * dv.transpose();
    const double s = t.alpha.dot(dalpha);
    const Vector dlogit = t.alpha.cwiseProduct((dalpha.array() - s).matrix());

    g.a.noalias() += t.C.transpose() * dlogit;
    dC += dlogit * params.a.transpose();

    const Matrix dH = dC.cwiseProduct((1.0 - t.C.array().square()).matrix());
    g.W.noalias() += dH.transpose() * t.X;
    Matrix dX = dH * params.W;
    if (t.mask.size() != 0) dX = dX.cwiseProduct(t.mask);

    auto scatter = [](std::map<std::int32_t, Vector>& rows, std::int32_t id, const auto& grad) {
        if (id == kPadId) return;
        auto [it, fresh] = rows.try_emplace(id, grad.transpose());
        if (!fresh) it->second += grad.transpose();
    };
    for (std::size_t i = 0; i < t.triples.size(); ++i) {
        if (!t.active[i]) continue;
        const auto r = static_cast<Eigen::Index>(i);
        scatter(g.tok_rows, t.triples[i].source, dX.block(r, 0, 1, e));
        scatter(g.path_rows, t.triples[i].path, dX.block(r, e, 1, e));
        scatter(g.tok_rows, t.triples[i].target, dX.block(r, 2 * e, 1, e));
    }
}

double loss_from_logit(double z, int label) {
    auto softplus = [](double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); };
    return label == 1 ? softplus(-z) : softplus(z);
}

double predict(const ModelParams& params, const EncodedExample& ex) { return forward(params, ex).p; }

// ---- serialization ----

namespace {

constexpr char kMagic[4] = {'O', 'B', 'O', '1'};

template <typename T>
void put_le(std::string& out, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::string_view bytes, std::size_t& pos) {
    if (bytes.size() - pos < sizeof(T)) throw FormatError("weight file truncated");
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, bytes.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

template <typename M>
void put_tensor(std::string& out, const M& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) put_le<double>(out, m.data()[i]);
}

template <typename M>
void get_tensor(std::string_view bytes, std::size_t& pos, M& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = get_le<double>(bytes, pos);
}

}  // namespace

std::string serialize_params(const ModelParams& params) {
    const ModelDims d = params.dims();
    std::string out(kMagic, 4);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.token_vocab_size));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.path_vocab_size));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.embed_dim));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.combined_dim()));
    put_tensor(out, params.E_tok);
    put_tensor(out, params.E_path);
    put_tensor(out, params.W);
    put_tensor(out, params.a);
    put_tensor(out, params.w_out);
    put_le<double>(out, params.b_out);
    return out;
}

ModelParams deserialize_params(std::string_view bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw FormatError("not a weight file (bad magic)");
    std::size_t pos = 4;
    ModelDims d;
    d.token_vocab_size = get_le<std::uint32_t>(bytes, pos);
    d.path_vocab_size = get_le<std::uint32_t>(bytes, pos);
    d.embed_dim = get_le<std::uint32_t>(bytes, pos);
    const std::uint64_t combined = get_le<std::uint32_t>(bytes, pos);
    if (d.token_vocab_size == 0 || d.path_vocab_size == 0 || d.embed_dim == 0 || combined != 3 * d.embed_dim)
        throw FormatError("weight file has inconsistent dimensions");
    const std::uint64_t values = (std::uint64_t{d.token_vocab_size} + d.path_vocab_size) * d.embed_dim +
                                 combined * combined + 2 * combined + 1;
    if (values > (bytes.size() - pos) / 8) throw FormatError("weight file truncated");
    if (values * 8 != bytes.size() - pos) throw FormatError("weight file has trailing bytes");
    ModelParams p = zero_params(d);
    get_tensor(bytes, pos, p.E_tok);
    get_tensor(bytes, pos, p.E_path);
    get_tensor(bytes, pos, p.W);
    get_tensor(bytes, pos, p.a);
    get_tensor(bytes, pos, p.w_out);
    p.b_out = get_le<double>(bytes, pos);
    return p;
}

void save_params(const ModelParams& params, const std::filesystem::path& path) {
    write_text_file(path, serialize_params(params));
}

ModelParams load_params(const std::filesystem::path& path) { return deserialize_params(read_text_file(path)); }

}  // namespace obo
