#include "oqa/invariant.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace oqa {

FormalWord formal_word(const MorseDiagram& d, const std::map<int, Segment>& basepoints) {
  FormalWord w;
  for (const auto& c : traverse(d, basepoints).components) {
    std::vector<Factor> f;
    for (const auto& l : c.labels) f.push_back({l.crossing, l.side, l.u_d, l.u_u});
    w.components.push_back(std::move(f));
    w.whitney.push_back(c.whitney);
    w.closed.push_back(c.closed);
  }
  return w;
}

int eval_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OQA_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

namespace {

using Sparse = std::vector<std::pair<int, Scalar>>;

struct Entry {
  int i, j;
  Scalar c;
};

struct Step {
  int crossing, side, image;  // image: index into twisted-map table
};

struct Comp {
  std::vector<Step> steps;
  bool closed;
  std::vector<Scalar> functional;  // x -> tr(G^d x), closed only
};

class StateSum {
 public:
  StateSum(const Structure& s, const MorseDiagram& d, const FormalWord& w, const std::vector<Scalar>* trace)
      : s_(s), A_(s.algebra) {
    const int n = static_cast<int>(d.slices.size());
    entries_.resize(n);
    for (int k = 0; k < n; ++k) {
      if (!is_crossing(d.slices[k].kind)) continue;
      const auto& r = d.slices[k].kind == SliceKind::CrossPos ? s.rho : s.rho_inv;
      for (const auto& [key, c] : r.entries()) entries_[k].push_back({key.first, key.second, c});
    }
    std::map<std::pair<int, int>, int> keys;
    for (std::size_t ci = 0; ci < w.components.size(); ++ci) {
      Comp c;
      c.closed = w.closed[ci];
      for (const auto& f : w.components[ci]) {
        auto [it, fresh] = keys.emplace(std::pair{f.u_d, f.u_u}, static_cast<int>(images_.size()));
        if (fresh) images_.push_back(twisted_images(f.u_d, f.u_u));
        c.steps.push_back({f.crossing, f.side, it->second});
      }
      if (c.closed) {
        if (!trace) throw std::invalid_argument("closed component needs a trace");
        c.functional = trace_functional(w.whitney[ci], *trace);
        if (c.steps.empty()) {
          // crossingless loop: w = 1
          constant_ *= s_.reduce(dot(c.functional, unit_sparse()));
          continue;
        }
      }
      comps_.push_back(std::move(c));
    }
    chosen_.assign(n, -1);
  }

  // Sum over assignments; the open component's element (or 1) times the traces.
  std::map<int, Scalar> run(int threads) {
    std::map<int, Scalar> total;
    if (constant_.is_zero()) return total;
    const Step* first = first_step();
    if (!first || threads <= 1 || entries_[first->crossing].size() < 2) {
      rec(0, 0, constant_, unit_sparse(), total);
      return total;
    }
    // split on the first crossing's entries
    const int c0 = first->crossing;
    const int m = static_cast<int>(entries_[c0].size());
    std::vector<std::map<int, Scalar>> parts(m);
    auto work = [&](int lo, int hi) {
      StateSum local = *this;
      for (int e = lo; e < hi; ++e) {
        local.chosen_[c0] = e;
        local.rec(0, 0, constant_ * entries_[c0][e].c, unit_sparse(), parts[e]);
        local.chosen_[c0] = -1;
      }
    };
    const int t = std::min(threads, m);
    std::vector<std::future<void>> fs;
    for (int k = 0; k < t; ++k) fs.push_back(std::async(std::launch::async, work, k * m / t, (k + 1) * m / t));
    for (auto& f : fs) f.get();
    for (auto& p : parts) add_into(total, p);
    return total;
  }

 private:
  const Step* first_step() const {
    for (const auto& c : comps_)
      if (!c.steps.empty()) return &c.steps.front();
    return nullptr;
  }

  Sparse unit_sparse() const {
    Sparse u;
    for (int i = 0; i < A_.dim; ++i)
      if (!A_.unit[i].is_zero()) u.push_back({i, A_.unit[i]});
    return u;
  }

  static Scalar dot(const std::vector<Scalar>& f, const Sparse& x) {
    Scalar r;
    for (const auto& [k, c] : x)
      if (!f[k].is_zero()) r += f[k] * c;
    return r;
  }

  static void add_into(std::map<int, Scalar>& acc, const std::map<int, Scalar>& x) {
    for (const auto& [k, c] : x) {
      auto& slot = acc[k];
      slot += c;
      if (slot.is_zero()) acc.erase(k);
    }
  }

  std::vector<Sparse> twisted_images(int ud, int uu) const {
    AlgebraMap m = s_.t_d.power(ud, &s_.roots).compose(s_.t_u.power(uu, &s_.roots)).reduced(s_.roots);
    std::vector<Sparse> cols(A_.dim);
    for (int j = 0; j < A_.dim; ++j)
      for (int i = 0; i < A_.dim; ++i)
        if (!m.at(i, j).is_zero()) cols[j].push_back({i, m.at(i, j)});
    return cols;
  }

  std::vector<Scalar> trace_functional(int d, const std::vector<Scalar>& trace) const {
    if (!s_.twist || !s_.twist_inv) throw std::invalid_argument("closed component needs a twist element G");
    const AlgebraElement& g = d >= 0 ? *s_.twist : *s_.twist_inv;
    AlgebraElement gd = AlgebraElement::one(A_);
    for (int k = 0; k < std::abs(d); ++k) gd = s_.reduce(mul(A_, gd, g));
    std::vector<Scalar> f(A_.dim);
    for (int k = 0; k < A_.dim; ++k)
      f[k] = s_.reduce(apply_trace(trace, mul(A_, gd, AlgebraElement::basis(A_.dim, k))));
    return f;
  }

  Sparse times(const Sparse& x, const Sparse& y) const {
    std::map<int, Scalar> acc;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) {
        const auto& p = A_.product(i, j);
        if (p.empty()) continue;
        Scalar ab = a * b;
        for (const auto& [k, c] : p) acc[k] += ab * c;
      }
    Sparse r;
    for (auto& [k, c] : acc)
      if (!c.is_zero()) r.push_back({k, std::move(c)});
    return r;
  }

  // comp ci, step si; coef already includes every chosen entry and finished trace.
  void rec(std::size_t ci, std::size_t si, const Scalar& coef, const Sparse& partial, std::map<int, Scalar>& out) {
    if (ci == comps_.size()) {
      for (const auto& [k, c] : partial) {
        auto& slot = out[k];
        slot += s_.reduce(coef * c);
        if (slot.is_zero()) out.erase(k);
      }
      return;
    }
    const Comp& comp = comps_[ci];
    if (si == comp.steps.size()) {
      if (!comp.closed) {
        // the open component is last
        rec(ci + 1, 0, coef, partial, out);
        return;
      }
      Scalar t = s_.reduce(dot(comp.functional, partial) * coef);
      if (t.is_zero()) return;
      rec(ci + 1, 0, t, unit_sparse(), out);
      return;
    }
    const Step& st = comp.steps[si];
    auto advance = [&](int e, const Scalar& c) {
      const Entry& en = entries_[st.crossing][e];
      const Sparse& img = images_[st.image][st.side == 0 ? en.i : en.j];
      if (img.empty()) return;
      Sparse next = times(partial, img);
      if (next.empty()) return;
      rec(ci, si + 1, c, next, out);
    };
    if (chosen_[st.crossing] >= 0) {
      advance(chosen_[st.crossing], coef);
      return;
    }
    const int m = static_cast<int>(entries_[st.crossing].size());
    for (int e = 0; e < m; ++e) {
      chosen_[st.crossing] = e;
      advance(e, coef * entries_[st.crossing][e].c);
    }
    chosen_[st.crossing] = -1;
  }

  const Structure& s_;
  const AlgebraSpec& A_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::vector<Sparse>> images_;
  std::vector<Comp> comps_;
  std::vector<int> chosen_;
  Scalar constant_{1};
};

}  // namespace

AlgebraElement evaluate_tangle(const Structure& s, const MorseDiagram& d, const EvalOptions& opt) {
  if (d.boundary != Boundary::Open) throw std::invalid_argument("evaluate_tangle needs an open diagram");
  auto w = formal_word(d, opt.basepoints);
  const bool loops = std::count(w.closed.begin(), w.closed.end(), true) > 0;
  if (loops) {
    if (opt.trace.empty()) throw std::invalid_argument("tangle with closed components needs a trace");
    check_trace(s, opt.trace);
  }
  StateSum ss(s, d, w, loops ? &opt.trace : nullptr);
  auto r = ss.run(eval_threads(opt.threads));
  AlgebraElement out(s.algebra.dim);
  for (auto& [k, c] : r) out[k] = s.reduce(c);
  return out;
}

Scalar evaluate_link(const Structure& s, const MorseDiagram& d, const std::vector<Scalar>& trace,
                     const EvalOptions& opt) {
  if (d.boundary != Boundary::Closed) throw std::invalid_argument("evaluate_link needs a closed diagram");
  if (!s.twist || !s.twist_inv) throw std::invalid_argument("closed diagrams need a structure with a twist element G");
  check_trace(s, trace);
  auto w = formal_word(d, opt.basepoints);
  StateSum ss(s, d, w, &trace);
  auto r = ss.run(eval_threads(opt.threads));
  // no open component: the result sits on the unit's support
  const auto& unit = s.algebra.unit;
  for (int k = 0; k < s.algebra.dim; ++k)
    if (!unit[k].is_zero()) {
      auto it = r.find(k);
      return it == r.end() ? Scalar(0) : s.reduce(it->second / unit[k]);
    }
  return Scalar(0);
}

Scalar evaluate_knot(const Structure& s, const MorseDiagram& d, const std::vector<Scalar>& trace,
                     const EvalOptions& opt) {
  if (traverse(d).components.size() != 1) throw std::invalid_argument("evaluate_knot needs exactly one component");
  return evaluate_link(s, d, trace, opt);
}

}  // namespace oqa
