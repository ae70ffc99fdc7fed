#include "doctest.h"
#include "fastbench/synthetic_work.hpp"

using namespace fastbench;

TEST_CASE("cpu-class work holds the thread for the requested time") {
  for (int i = 0; i < 5; ++i) {
    const double elapsed = synthetic_work(20.0, ResourceClass::cpu);
    CHECK(elapsed >= 20.0);
    CHECK(elapsed < 30.0);
  }
}

TEST_CASE("idle-class work sleeps for the requested time") {
  const double before = thread_cpu_ms();
  const double elapsed = synthetic_work(50.0, ResourceClass::idle);
  const double cpu = thread_cpu_ms() - before;
  CHECK(elapsed >= 50.0);
  CHECK(elapsed < 80.0);
  CHECK(cpu < 10.0);
}

TEST_CASE("cpu-class work burns cpu, idle-class work does not") {
  double before = thread_cpu_ms();
  synthetic_work(30.0, ResourceClass::cpu);
  const double busy_cpu = thread_cpu_ms() - before;
  CHECK(busy_cpu > 20.0);
}

TEST_CASE("zero latency returns immediately") {
  CHECK(synthetic_work(0.0, ResourceClass::cpu) < 5.0);
  CHECK(synthetic_work(0.0, ResourceClass::idle) < 5.0);
}

TEST_CASE("process cpu clock is monotone") {
  const double a = process_cpu_ms();
  synthetic_work(5.0, ResourceClass::cpu);
  CHECK(process_cpu_ms() > a);
}
