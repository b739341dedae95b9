#include "uhyp/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "uhyp/errors.hpp"

namespace uhyp {

FrequencyGrid::FrequencyGrid(GridSpec g) : grid(std::move(g)) { grid.validate(); }

double FrequencyGrid::spacing(int axis) const { return std::numbers::pi / grid.extent[axis]; }

double FrequencyGrid::frequency(int axis, int index) const {
    return spacing(axis) * (index - grid.points[axis] / 2);
}

void FrequencyGrid::point(std::size_t flat, std::span<double> omega) const {
    for (int a = grid.axes() - 1; a >= 0; --a) {
        const auto m = static_cast<std::size_t>(grid.points[a]);
        omega[a] = frequency(a, static_cast<int>(flat % m));
        flat /= m;
    }
}

double FrequencyGrid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < grid.axes(); ++a) v *= spacing(a);
    return v;
}

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// FFTW-aligned scratch buffer. Using a fresh aligned buffer for every
// transform keeps the selected codelets, and hence the rounding, identical
// from call to call.
class AlignedBuffer {
public:
    explicit AlignedBuffer(std::size_t n)
        : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max<std::size_t>(n, 1)))),
          size_(n) {
        if (data_ == nullptr) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(data_); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;

    fftw_complex* raw() { return data_; }
    Complex* begin() { return reinterpret_cast<Complex*>(data_); }
    std::size_t size() const { return size_; }

private:
    fftw_complex* data_;
    std::size_t size_;
};

class Plan {
public:
    Plan() = default;
    explicit Plan(fftw_plan p) : plan_(p) {}
    ~Plan() {
        if (plan_ != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan_);
        }
    }
    Plan(Plan&& o) noexcept : plan_(o.plan_) { o.plan_ = nullptr; }
    Plan& operator=(Plan&&) = delete;
    Plan(const Plan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

// In-place one-dimensional DFT along `axis`, vectorised over all other axes.
Plan plan_axis(const GridSpec& grid, int axis, int sign, AlignedBuffer& buf) {
    const auto strides = grid.strides();
    fftw_iodim dim{grid.points[axis], static_cast<int>(strides[axis]), static_cast<int>(strides[axis])};
    std::vector<fftw_iodim> loops;
    for (int a = 0; a < grid.axes(); ++a) {
        if (a == axis) continue;
        loops.push_back({grid.points[a], static_cast<int>(strides[a]), static_cast<int>(strides[a])});
    }
    std::lock_guard lock(planner_mutex());
    fftw_plan p = fftw_plan_guru_dft(1, &dim, static_cast<int>(loops.size()), loops.data(),
                                     buf.raw(), buf.raw(), sign, FFTW_ESTIMATE);
    if (p == nullptr) throw Error("FFTW could not create a plan");
    return Plan(p);
}

// Parity of sum_a index_a and of sum_a (index_a - M_a/2) for every node.
struct Parities {
    std::vector<unsigned char> node;
    std::vector<unsigned char> frequency;
};

Parities parities(const GridSpec& grid) {
    Parities out;
    const std::size_t total = grid.size();
    out.node.resize(total);
    out.frequency.resize(total);
    int half_sum = 0;
    for (int m : grid.points) half_sum += m / 2;
    std::vector<int> index(grid.axes());
    for (std::size_t k = 0; k < total; ++k) {
        grid.unravel(k, index);
        int sum = 0;
        for (int i : index) sum += i;
        out.node[k] = static_cast<unsigned char>(sum & 1);
        out.frequency[k] = static_cast<unsigned char>((sum - half_sum) & 1);
    }
    return out;
}

// sign_for(axis): FFTW exponent sign of the forward transform on that axis.
int forward_sign(const GridSpec& grid, int axis) {
    return grid.role(axis) == AxisRole::y ? FFTW_BACKWARD : FFTW_FORWARD;
}

// Shared kernel of forward and inverse: pre-phase, per-axis DFTs, post-phase, scale.
std::vector<Complex> transform(const GridSpec& grid, const std::vector<Complex>& input,
                               bool is_forward, double scale) {
    grid.validate();
    if (input.size() != grid.size()) throw InvalidArgument("array size does not match grid");
    const std::size_t total = grid.size();
    AlignedBuffer buf(total);
    std::vector<Plan> plans;
    plans.reserve(grid.axes());
    for (int a = 0; a < grid.axes(); ++a) {
        const int sign = is_forward ? forward_sign(grid, a) : -forward_sign(grid, a);
        plans.push_back(plan_axis(grid, a, sign, buf));
    }

    const Parities par = parities(grid);
    const auto& pre = is_forward ? par.node : par.frequency;
    const auto& post = is_forward ? par.frequency : par.node;
    Complex* data = buf.begin();
    for (std::size_t k = 0; k < total; ++k) data[k] = pre[k] ? -input[k] : input[k];
    for (const Plan& p : plans) p.execute();

    std::vector<Complex> out(total);
    for (std::size_t k = 0; k < total; ++k) {
        const Complex v = data[k] * scale;
        out[k] = post[k] ? -v : v;
    }
    return out;
}

}  // namespace

SpectralField forward(const Field& f) {
    if (f.values.size() != f.grid.size()) throw InvalidArgument("field size does not match grid");
    const double scale = 2.0 * f.grid.cell_volume();
    return SpectralField{f.grid, f.time, transform(f.grid, f.values, true, scale)};
}

Field inverse(const SpectralField& g) {
    const FrequencyGrid fg(g.grid);
    const int dims = g.grid.axes();
    const double scale = 0.5 * std::pow(2.0 * std::numbers::pi, -dims) * fg.cell_volume();
    return Field{g.grid, g.time, transform(g.grid, g.coefficients, false, scale)};
}

double plancherel_ratio(const Field& f) {
    const double norm = l2_norm(f);
    if (norm == 0.0) throw InvalidArgument("Plancherel ratio is undefined for a zero field");
    const SpectralField g = forward(f);
    double sum = 0.0;
    for (const Complex& c : g.coefficients) sum += std::norm(c);
    return sum * FrequencyGrid(f.grid).cell_volume() / (norm * norm);
}

}  // namespace uhyp
