import math, unittest

from sdcam.common import ScheduleFamily
from sdcam.errors import ConfigError
from sdcam.schedules import ScheduleSpec, beta_at, blocked_schedule, power_schedule

class TestBetaAt(unittest.TestCase):

    def test_power(self):
        self.assertEqual(beta_at(power_schedule(1.0, 0.5), 3), 2.0)
        self.assertEqual(beta_at(power_schedule(0.25, 0.3), 0), 0.25)

    def test_blocked_holds_within_block(self):
        s = blocked_schedule(1.0, 0.5, 10)
        self.assertEqual(beta_at(s, 5), 1.0)
        self.assertEqual(beta_at(s, 9), 1.0)

    def test_blocked_steps_at_multiples_of_K(self):
        s = blocked_schedule(1.0, 0.5, 10)
        self.assertAlmostEqual(beta_at(s, 10), math.sqrt(11.0))
        self.assertEqual(beta_at(s, 10), beta_at(s, 19))

    def test_blocked_with_K_one_is_power(self):
        for t in (0, 1, 7, 100):
            self.assertEqual(beta_at(blocked_schedule(2.0, 0.3, 1), t),
                             beta_at(power_schedule(2.0, 0.3), t))

    def test_nondecreasing(self):
        for s in (power_schedule(1e-4, 0.3), blocked_schedule(1.0, 0.5, 3)):
            betas = [beta_at(s, t) for t in range(200)]
            self.assertEqual(betas, sorted(betas))

    def test_negative_index(self):
        with self.assertRaises(ValueError):
            beta_at(power_schedule(1.0, 0.5), -1)

class TestScheduleSpec(unittest.TestCase):

    def test_defaults(self):
        s = ScheduleSpec()
        self.assertEqual(s.family, ScheduleFamily.power)
        self.assertEqual((s.beta0, s.delta, s.K), (1.0, 0.5, 1))

    def test_constants(self):
        self.assertEqual(power_schedule(2.0, 0.5).constants(), (2.0, 2.0, 1.0))
        alpha0, gamma0, eta0 = blocked_schedule(1.0, 0.5, 4).constants()
        self.assertAlmostEqual(alpha0, 0.5)
        self.assertEqual(gamma0, 1.0)
        self.assertAlmostEqual(eta0, 0.5 * 4 ** 1.5)

    def test_family_parsed_from_string(self):
        s = ScheduleSpec(family='blocked', K=3)
        self.assertEqual(s.family, ScheduleFamily.blocked)

    def test_invalid(self):
        for kwargs in ({'delta': 1.0}, {'delta': 0.0}, {'beta0': 0.0}, {'K': 3},
                       {'family': 'geometric'}, {'family': 'blocked', 'K': 0}):
            with self.assertRaises(ConfigError):
                ScheduleSpec(**kwargs)

    def test_call_returns_modified_copy(self):
        s = power_schedule(1.0, 0.3)
        t = s(beta0=1e-4)
        self.assertEqual(s.beta0, 1.0)
        self.assertEqual(t.beta0, 1e-4)
        self.assertEqual(t.delta, 0.3)

if __name__ == '__main__':
    unittest.main()
