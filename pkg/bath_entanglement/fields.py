from .exceptions import FieldTypeError, FieldValueError


class JSONField:
    types = (int, float, str, bool, list)

    def __init__(self, field_type=None, required=False, default=None,
                 blank=True, choices=None, min_value=None):
        if field_type not in self.types:
            raise FieldTypeError('field_type should be one of: {}'.format(
                str(self.types).replace("<class '", '').replace("'>", '')))
        if choices is not None and default is not None \
                and default not in choices:
            raise FieldValueError('default `{}` is not among choices {}'.format(
                default, list(choices)))
        self.field_type = field_type
        self.required = required or (not blank)
        self.default = default
        self.blank = blank
        self.choices = tuple(choices) if choices is not None else None
        self.min_value = min_value
        self.key = ''

    def check_type(self, value):
        messages = []
        try:
            if self.field_type is bool and not isinstance(value, bool):
                raise TypeError
            if self.field_type in (int, float) and isinstance(value, bool):
                raise TypeError
            _value = self.field_type(value)
        except (TypeError, ValueError):
            messages.append('Could not treat {} value `{}` as {}'.format(
                self.key or '', value, self.field_type.__name__))
            _value = None
        return _value, messages

    def check_range(self, value):
        messages = []
        if self.choices is not None and value not in self.choices:
            messages.append('`{}` value `{}` should be one of {}'.format(
                self.key, value, list(self.choices)))
        if self.min_value is not None and value < self.min_value:
            messages.append('`{}` value {} should be >= {}'.format(
                self.key, value, self.min_value))
        return messages

    def validate(self, key, value):
        self.key = key
        messages = []
        if value is None and self.default is not None:
            value = self.default
        if self.required and (value is None):
            messages.append('`{}` value is required'.format(key))
        elif not self.blank and value == '':
            messages.append('`{}` value blank is not allowed'.format(key))
        if messages or value is None:
            return None, messages
        value, msg = self.check_type(value)
        messages += msg
        if not messages:
            messages += self.check_range(value)
        if messages:
            value = None
        return value, messages


class String(JSONField):
    def __init__(self, required=False, default=None, blank=True, choices=None):
        super().__init__(field_type=str, required=required, default=default,
                         blank=blank, choices=choices)


class Float(JSONField):
    def __init__(self, required=False, default=None, min_value=None):
        super().__init__(field_type=float, required=required, default=default,
                         min_value=min_value)


class Bool(JSONField):
    def __init__(self, required=False, default=None):
        super().__init__(field_type=bool, required=required, default=default)


class FloatList(JSONField):
    """List of floats, every item checked against ``min_value``."""

    def __init__(self, required=False, default=None, min_value=None,
                 min_length=1):
        super().__init__(field_type=list, required=required, default=default,
                         min_value=min_value)
        self.min_length = min_length

    def check_type(self, value):
        if not isinstance(value, (list, tuple)):
            return None, ['{} should be a list of numbers'.format(self.key)]
        items, messages = [], []
        for item in value:
            try:
                if isinstance(item, bool):
                    raise TypeError
                items.append(float(item))
            except (TypeError, ValueError):
                messages.append('Could not treat {} item `{}` as float'.format(
                    self.key, item))
        if len(items) < self.min_length:
            messages.append('{} should have at least {} items'.format(
                self.key, self.min_length))
        return (items if not messages else None), messages

    def check_range(self, value):
        if self.min_value is not None and any(v < self.min_value for v in value):
            return ['`{}` items should be >= {}'.format(
                self.key, self.min_value)]
        return []


def check_structure(data, structure, key='', messages=None):
    # recursive function, validates data by a structure of fields
    value = None
    if messages is None:
        messages = []
    if isinstance(structure, JSONField):
        value, msg = structure.validate(key, data)
        messages += msg
    elif isinstance(structure, dict):
        if not isinstance(data, dict):
            messages.append('{} should be a dict instance'.format(key or 'data'))
        else:
            value = {}
            for sub_key, sub_structure in structure.items():
                val, msg = check_structure(data.get(sub_key, None),
                                           sub_structure, sub_key)
                if val is not None:
                    value[sub_key] = val
                messages += msg
    elif isinstance(structure, (list, tuple)):
        if not isinstance(data, (list, tuple)):
            messages.append(
                '{} should be a list or a tuple instance'.format(key))
        else:
            value = []
            for index, item in enumerate(data):
                val, msg = check_structure(item, structure[0],
                                           '{}[{}]'.format(key, index))
                if val is not None:
                    value.append(val)
                messages += msg
    return value, messages
