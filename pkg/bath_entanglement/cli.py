import argparse
import json
import logging
import sys

import pandas as pd

from .bath_config import load_bath
from .cavity import (
    MATERIALS,
    CavityConfig,
    cavity_bath,
    derive_constants,
    peak_time,
)
from .config import __version__
from .exceptions import BathEntanglementError, ConfigError
from .experiments import (
    ScanGrid,
    Spacing,
    default_initial_state,
    run_trajectory,
    scan_plane,
    separability_time,
    time_grid,
)
from .linalg import BipartiteDims
from .settings import SETTINGS_ENV, get_settings
from .states import CouplingSpectrum, PureState, product_state
from .status import EXIT_0_OK, EXIT_1_FAILURE, is_numerical_error

logger = logging.getLogger('bath_entanglement.cli')


def float_list(text):
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            '`{}` is not a comma separated list of numbers'.format(text))


def amplitude_list(text):
    try:
        return [complex(item.replace(' ', '')) for item in text.split(',')
                if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            '`{}` is not a comma separated list of amplitudes'.format(text))


def dims_pair(text):
    try:
        d_a, d_b = (int(item) for item in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(
            '`{}` should look like `2,3`'.format(text))
    return d_a, d_b


class BaseCommand:
    """One sub-command: declared arguments plus ``handle``.

    ``dispatch`` runs ``handle`` and turns package errors into exit statuses.
    """
    name = None
    help = None
    arguments = ()

    def __init__(self, stdout=None):
        self.stdout = stdout or sys.stdout

    @classmethod
    def add_to(cls, subparsers):
        parser = subparsers.add_parser(cls.name, help=cls.help)
        for args, kwargs in cls.arguments:
            parser.add_argument(*args, **kwargs)
        parser.set_defaults(command=cls)
        return parser

    def handle(self, args):
        raise NotImplementedError

    def dispatch(self, args):
        logger.debug('Command: [{}] {}'.format(self.name, vars(args)))
        try:
            self.handle(args)
        except BathEntanglementError as err:
            logger.debug('Error in command [{}]'.format(self.name),
                         exc_info=True)
            print('error: {}'.format(err), file=sys.stderr)
            if is_numerical_error(err.exit_status):
                print('hint: tolerances can be relaxed in the file named by '
                      '${}'.format(SETTINGS_ENV), file=sys.stderr)
            return err.exit_status
        except Exception:
            logger.exception('Error in command [{}]'.format(self.name))
            return EXIT_1_FAILURE
        logger.debug('Response: [{}] {}'.format(self.name, EXIT_0_OK))
        return EXIT_0_OK

    def write_frame(self, frame, out):
        if out in (None, '-'):
            frame.to_csv(self.stdout, index=False)
        else:
            frame.to_csv(out, index=False)

    def write_json(self, data):
        print(json.dumps(data), file=self.stdout)


SPECTRUM = (('--spectrum',), {
    'type': float_list, 'required': True,
    'help': 'coupling eigenvalues a0,...,b0,... (dA values then dB values)'})
DIMS = (('--dims',), {
    'type': dims_pair, 'default': None,
    'help': 'dA,dB; default 2 and the rest of --spectrum'})
STATE_A = (('--state-a',), {
    'type': amplitude_list, 'default': None,
    'help': 'amplitudes of the initial state of A (normalized)'})
STATE_B = (('--state-b',), {
    'type': amplitude_list, 'default': None,
    'help': 'amplitudes of the initial state of B (normalized)'})
BATH = (('--bath',), {'required': True, 'help': 'path to bath.json'})
OUT = (('--out',), {'default': '-', 'help': 'CSV file, `-` for stdout'})


class SystemCommand(BaseCommand):
    """Command taking a coupling spectrum and an initial product state."""

    @staticmethod
    def system(args):
        values = args.spectrum
        dims = BipartiteDims(*args.dims) if args.dims else \
            BipartiteDims(2, max(len(values) - 2, 1))
        spectrum = CouplingSpectrum.from_flat(values, dims)
        if args.state_a is None and args.state_b is None:
            rho0 = default_initial_state(dims)
        else:
            psi_a = PureState.from_amplitudes(
                args.state_a, normalize=True) if args.state_a else \
                PureState.minus()
            psi_b = PureState.from_amplitudes(
                args.state_b, normalize=True) if args.state_b else \
                PureState.uniform(dims.dB)
            rho0 = product_state(psi_a, psi_b)
        return rho0, spectrum


class ScanPlane(SystemCommand):
    name = 'scan-plane'
    help = 'smallest partial-transpose eigenvalue over an (f, phi) grid'
    arguments = (
        SPECTRUM, DIMS, STATE_A, STATE_B, OUT,
        (('--f-max',), {'type': float, 'default': None}),
        (('--phi-max',), {'type': float, 'default': None}),
        (('--n',), {'type': int, 'default': None,
                    'help': 'points per axis'}),
    )

    def handle(self, args):
        settings = get_settings()
        rho0, spectrum = self.system(args)
        grid = ScanGrid.linear(
            settings['GRID_F_MAX'] if args.f_max is None else args.f_max,
            settings['GRID_PHI_MAX'] if args.phi_max is None else args.phi_max,
            settings['GRID_POINTS'] if args.n is None else args.n)
        self.write_frame(scan_plane(rho0, spectrum, grid), args.out)


class Trajectory(SystemCommand):
    name = 'trajectory'
    help = 'kernel, lambda0 and negativity along the path of a bath'
    arguments = (
        BATH, SPECTRUM, DIMS, STATE_A, STATE_B, OUT,
        (('--t-max',), {'type': float, 'required': True}),
        (('--n',), {'type': int, 'default': 200}),
        (('--spacing',), {'choices': [s.value for s in Spacing],
                          'default': Spacing.LINEAR.value}),
    )

    def handle(self, args):
        rho0, spectrum = self.system(args)
        bath = load_bath(args.bath)
        times = time_grid(args.t_max, args.n, Spacing(args.spacing))
        result = run_trajectory(rho0, spectrum, bath, times)
        self.write_frame(result.to_frame(), args.out)


class SeparabilityTime(SystemCommand):
    name = 'septime'
    help = 'time after which the state stays separable'
    arguments = (
        BATH, SPECTRUM, DIMS, STATE_A, STATE_B,
        (('--t-max',), {'type': float, 'required': True}),
    )

    def handle(self, args):
        rho0, spectrum = self.system(args)
        bath = load_bath(args.bath)
        self.write_json(separability_time(rho0, spectrum, bath,
                                          args.t_max).to_json())


class Cavity(BaseCommand):
    name = 'cavity'
    help = 'decoherence functions of two quantum dots in a box cavity'
    arguments = (
        OUT,
        (('--d',), {'type': float, 'required': True,
                    'help': 'dipole separation, m'}),
        (('--T',), {'type': float, 'required': True,
                    'help': 'temperature, K'}),
        (('--material',), {'choices': sorted(MATERIALS),
                           'default': 'aluminum'}),
        (('--geometry',), {'type': float_list, 'default': None,
                           'help': 'a,b,c edge lengths, m'}),
        (('--t-max',), {'type': float, 'default': None,
                        'help': 'default 1000 x the peak time'}),
        (('--n',), {'type': int, 'default': 200}),
        (('--constants',), {'action': 'store_true',
                            'help': 'print zeta, tau, x_max as JSON'}),
    )

    def handle(self, args):
        geometry = {}
        if args.geometry:
            if len(args.geometry) != 3:
                raise ConfigError('--geometry needs three values a,b,c')
            geometry = dict(zip('abc', args.geometry))
        cfg = CavityConfig.for_material(args.d, args.T, args.material,
                                        **geometry)
        if args.constants:
            self.write_json(derive_constants(cfg).to_json())
            return
        bath = cavity_bath(cfg)
        t_max = 1000.0 * peak_time(cfg) if args.t_max is None else args.t_max
        times = time_grid(t_max, args.n, Spacing.LOG)
        kernels = [bath.kernel(t) for t in times]
        self.write_frame(pd.DataFrame({
            't': times,
            'f': [k.f for k in kernels],
            'phi': [k.phi for k in kernels],
        }, columns=['t', 'f', 'phi']), args.out)


COMMANDS = (ScanPlane, Trajectory, Cavity, SeparabilityTime)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='bath-entanglement',
        description='Entanglement of two qudits through a common heat bath.')
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    subparsers = parser.add_subparsers(dest='name')
    subparsers.required = True
    for command in COMMANDS:
        command.add_to(subparsers)
    return parser


def main(argv=None, stdout=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')
    return args.command(stdout=stdout).dispatch(args)


if __name__ == '__main__':
    sys.exit(main())
