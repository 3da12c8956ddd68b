import logging
import sys
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from logmodapp.commands import COMMANDS, get_command, run_command
from logmodapp.documents import ParseError, parse_document, serialize_document
from logmodapp.exceptions import LogModError, UnknownCommand

logger = logging.getLogger('logmodapp')

SUCCESS, DOMAIN_ERROR, INPUT_ERROR = 0, 1, 2


class Command(BaseCommand):
    help = 'Run a monoid, blow-up or valuation computation on JSON documents.'
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        parser.add_argument('name', help=f'one of: {", ".join(sorted(COMMANDS))}')
        parser.add_argument('--oracle', action='store_true',
                            help='check the result against the brute-force oracle')
        parser.add_argument('--batch', action='store_true',
                            help='read and write one document per line')
        parser.add_argument('--out', help='write results to this file instead of stdout')
        parser.add_argument('--dot', help='write a DOT graph of the fan or tower here')
        parser.add_argument('--input', help='read documents from this file instead of stdin')

    def handle(self, *args, **options):
        name = options['name']
        try:
            get_command(name)
        except UnknownCommand as exc:
            self._emit([exc.as_document()], options)
            raise CommandError(exc.message, returncode=INPUT_ERROR)

        text = self._read(options)
        if options['batch']:
            lines = [line for line in text.splitlines() if line.strip()]
            with ThreadPoolExecutor(max_workers=settings.LOGMODKIT_BATCH_WORKERS) as pool:
                outcomes = list(pool.map(lambda line: self._run(name, line, options), lines))
        else:
            outcomes = [self._run(name, text, options)]

        self._emit([document for document, _, _ in outcomes], options)
        graphs = [graph for _, _, graph in outcomes if graph]
        if options['dot'] and graphs:
            with open(options['dot'], 'w', encoding='utf-8') as handle:
                handle.write(''.join(graphs))

        code = max((code for _, code, _ in outcomes), default=SUCCESS)
        if code:
            failures = sum(1 for _, c, _ in outcomes if c)
            raise CommandError(f'{name}: {failures} document(s) failed', returncode=code)

    def _read(self, options):
        if options['input']:
            with open(options['input'], 'rb') as handle:
                return self._decode(handle.read())
        stream = options.get('stdin') or sys.stdin
        return stream.read()

    def _decode(self, raw):
        try:
            return raw.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise CommandError(f'input is not UTF-8: {exc.reason}', returncode=INPUT_ERROR)

    def _run(self, name, text, options):
        """Returns (result document, exit code, DOT text) for one input document."""
        try:
            document = parse_document(text)
            result = run_command(name, document, oracle=options['oracle'])
        except ParseError as exc:
            return exc.as_document(), INPUT_ERROR, None
        except ValidationError as exc:
            message = '; '.join(exc.messages)
            return {'error': 'ValidationError', 'message': message}, INPUT_ERROR, None
        except LogModError as exc:
            logger.info('%s failed with %s', name, exc.code)
            return exc.as_document(), DOMAIN_ERROR, None
        return result.document, SUCCESS, result.dot

    def _emit(self, documents, options):
        lines = ''.join(serialize_document(d) + '\n' for d in documents)
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as handle:
                handle.write(lines)
        else:
            self.stdout.write(lines, ending='')
