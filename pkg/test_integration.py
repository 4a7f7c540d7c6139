#!/usr/bin/env python3
"""
Integration test script to verify all packages and a short end-to-end run
"""

import json
import os
import tempfile


def test_imports():
    """Test all package imports"""
    try:
        from fock import two_mode_operators, thermal_state
        from model import SystemParams, build_hamiltonian
        from normal_modes import bogoliubov_numeric, polariton_frequencies
        from dynamics import rk4_evolve, expm_oracle
        from otto import run_cycle, sweep_map
        from squeezed_bath import effective_bath_exact, evolve_effective_B
        from cli import execute, parse_config
        from reports.results_writer import ResultsWriter

        print('✓ Fock and model packages integrated')
        print('✓ Normal-mode and dynamics packages integrated')
        print('✓ Otto and squeezed-bath packages integrated')
        print('✓ CLI and reports packages integrated')
        return True
    except Exception as e:
        print(f'✗ Import test failed: {e}')
        return False


def test_spectrum_run():
    """Run the spectrum scenario into a scratch directory"""
    try:
        from cli.scenario_manager import execute

        with tempfile.TemporaryDirectory() as scratch:
            config_path = os.path.join(scratch, 'spectrum.json')
            with open(config_path, 'w', encoding='utf-8') as handle:
                json.dump({
                    'scenario': 'spectrum',
                    'spectrum': {'delta_start': -3.0, 'delta_stop': -0.1, 'num': 30, 'g': 0.05},
                }, handle)
            output = os.path.join(scratch, 'out')
            code = execute(config_path, output_directory=output, echo=lambda line: None)
            if code != 0:
                print(f'✗ Spectrum scenario exited with {code}')
                return False
            with open(os.path.join(output, 'spectrum.csv'), encoding='utf-8') as handle:
                lines = [line for line in handle if not line.startswith('#')]
            print(f'✓ Spectrum scenario wrote {len(lines) - 1} rows')
            print(f'✓ Columns: {lines[0].strip()}')
        return True
    except Exception as e:
        print(f'✗ Spectrum run failed: {e}')
        return False


def test_bad_config():
    """An unstable detuning is reported as a validation error"""
    try:
        from cli.scenario_manager import execute

        with tempfile.TemporaryDirectory() as scratch:
            config_path = os.path.join(scratch, 'bad.json')
            with open(config_path, 'w', encoding='utf-8') as handle:
                json.dump({
                    'scenario': 'bath',
                    'params': {'kappa': 0.03, 'gamma': 0.001},
                    'bath': {'delta': -0.01, 'g': 0.1, 't_final': 10.0},
                }, handle)
            messages = []
            code = execute(config_path, output_directory=scratch, echo=messages.append)
            if code != 3:
                print(f'✗ Expected exit code 3, got {code}')
                return False
            print(f'✓ Validation error reported: {messages[0]}')
        return True
    except Exception as e:
        print(f'✗ Bad-config test failed: {e}')
        return False


def main():
    """Run all integration tests"""
    print("\n" + "="*60)
    print("OPTOTTO SIMULATOR - INTEGRATION TEST")
    print("="*60 + "\n")

    print("[1/3] Testing package imports...")
    imports_ok = test_imports()

    print("\n[2/3] Testing spectrum scenario...")
    spectrum_ok = test_spectrum_run()

    print("\n[3/3] Testing config validation...")
    config_ok = test_bad_config()

    print("\n" + "="*60)
    if imports_ok and spectrum_ok and config_ok:
        print("✓ ALL INTEGRATION TESTS PASSED")
        print("="*60 + "\n")
        return 0
    print("✗ SOME TESTS FAILED - See details above")
    print("="*60 + "\n")
    return 1


if __name__ == '__main__':
    exit(main())
