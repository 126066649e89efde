#include "contracta/settings.hpp"

#include <mutex>

namespace contracta {
namespace {
std::mutex g_mutex;
Settings g_settings;
}  // namespace

Settings settings() {
  std::lock_guard lock(g_mutex);
  return g_settings;
}

void set_settings(const Settings& s) {
  std::lock_guard lock(g_mutex);
  g_settings = s;
}

void set_tolerance(double feas_tol) {
  std::lock_guard lock(g_mutex);
  g_settings.feas_tol = feas_tol;
  g_settings.opt_tol = feas_tol;
  g_settings.pivot_tol = feas_tol * 1e-2;
}

}  // namespace contracta
